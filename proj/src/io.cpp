#include "lsys/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "lsys/error.hpp"
#include "lsys/text.hpp"

namespace lsys {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t b = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

bool has_space(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

// Word from trimmed text; "<eps>" alone is the empty word.
Word parse_word(std::string_view text, Tokenization mode, std::size_t line) {
    if (text == kEpsilon) return Word{};
    Word w;
    if (mode == Tokenization::Chars) {
        if (has_space(text)) throw ParseError(line, "whitespace inside a word (use token mode for multi-character symbols)");
        try {
            w = Word::from_chars(text);
        } catch (const Error& e) {
            throw ParseError(line, e.what());
        }
    } else {
        w = Word::from_tokens(text);
        for (const auto& s : w)
            if (s.name() == kEpsilon) throw ParseError(line, "<eps> must stand alone");
    }
    return w;
}

bool skippable(std::string_view line) { return line.empty() || line.front() == '#'; }

void require_chars_renderable(const Alphabet& v, Tokenization mode) {
    if (mode != Tokenization::Chars) return;
    for (const auto& s : v)
        if (!is_single_scalar(s.name()))
            throw Error(ErrorKind::InvalidArgument,
                        "symbol '" + s.name() + "' is not a single character; use token mode");
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::Io, "cannot read " + path.string());
    return ss.str();
}

Sequence parse_sequence(std::string_view text, Tokenization mode) {
    std::vector<Word> words;
    auto lines = split_lines(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        auto line = trim(lines[n]);
        if (skippable(line)) continue;
        words.push_back(parse_word(line, mode, n + 1));
    }
    if (words.size() < 2)
        throw ParseError(lines.size(), "a sequence needs at least two words, found " + std::to_string(words.size()));
    return Sequence(std::move(words));
}

Sequence parse_sequence_file(const std::filesystem::path& path, Tokenization mode) {
    return parse_sequence(read_file(path), mode);
}

std::string format_word(const Word& w, Tokenization mode) { return render_word(w, mode == Tokenization::Tokens); }

std::string format_production(const Production& p, Tokenization mode) {
    return p.predecessor.name() + " -> " + format_word(p.successor, mode);
}

std::string serialize_sequence(const Sequence& theta, Tokenization mode) {
    require_chars_renderable(theta.alphabet(), mode);
    std::string out;
    for (const auto& w : theta.words()) {
        out += format_word(w, mode);
        out += '\n';
    }
    return out;
}

double parse_probability(std::string_view text) {
    auto number = [&](std::string_view s) {
        std::string buf(s);
        if (buf.empty()) throw Error(ErrorKind::Parse, "empty number in '" + std::string(text) + "'");
        char* end = nullptr;
        errno = 0;
        double v = std::strtod(buf.c_str(), &end);
        if (end != buf.c_str() + buf.size() || errno == ERANGE)
            throw Error(ErrorKind::Parse, "bad number '" + std::string(text) + "'");
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return number(text);
    double num = number(text.substr(0, slash));
    double den = number(text.substr(slash + 1));
    if (den == 0.0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    return num / den;
}

S0LSystem parse_system(std::string_view text, Tokenization mode) {
    std::optional<Word> axiom;
    WeightMap prob;
    ProductionSet defaults;
    auto lines = split_lines(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::size_t lineno = n + 1;
        auto line = trim(lines[n]);
        if (skippable(line)) continue;

        if (line.rfind("axiom:", 0) == 0) {
            if (axiom) throw ParseError(lineno, "duplicate axiom");
            axiom = parse_word(trim(line.substr(6)), mode, lineno);
            continue;
        }
        if (line.rfind("rule:", 0) != 0) throw ParseError(lineno, "expected 'axiom:' or 'rule:'");
        if (!axiom) throw ParseError(lineno, "rule before axiom");

        auto tok = split_ws(line.substr(5));
        if (tok.size() < 3 || tok[1] != "->") throw ParseError(lineno, "expected '<pred> -> <succ> p=<prob>'");
        std::size_t k = 2;
        while (k < tok.size() && tok[k].rfind("p=", 0) != 0) ++k;
        if (k == tok.size()) throw ParseError(lineno, "missing p=<prob>");
        if (k == 2) throw ParseError(lineno, "missing successor (write <eps> for the empty word)");

        if (mode == Tokenization::Chars && !is_single_scalar(tok[0]))
            throw ParseError(lineno, "predecessor '" + std::string(tok[0]) + "' is not a single character");
        if (tok[0] == kEpsilon) throw ParseError(lineno, "predecessor cannot be <eps>");
        if (mode == Tokenization::Chars && k != 3)
            throw ParseError(lineno, "successor must be a single word without spaces");

        std::string_view succ_text(tok[2].data(), tok[k - 1].data() + tok[k - 1].size() - tok[2].data());
        Production p{Symbol(std::string(tok[0])), parse_word(succ_text, mode, lineno)};

        double v;
        try {
            v = parse_probability(tok[k].substr(2));
        } catch (const Error& e) {
            throw ParseError(lineno, e.what());
        }

        bool is_default = false;
        std::size_t rest = tok.size() - k - 1;
        if (rest == 2 && tok[k + 1] == "#" && tok[k + 2] == "default") {
            is_default = true;
        } else if (rest == 1 && tok[k + 1] == "#default") {
            is_default = true;
        } else if (rest != 0) {
            throw ParseError(lineno, "unexpected text after probability");
        }

        if (!prob.emplace(p, v).second) throw ParseError(lineno, "duplicate rule " + format_production(p, mode));
        if (is_default) defaults.insert(p);
    }
    if (!axiom) throw ParseError(lines.size(), "missing axiom");
    return S0LSystem::from_rules(std::move(*axiom), std::move(prob), std::move(defaults));
}

S0LSystem parse_system_file(const std::filesystem::path& path, Tokenization mode) {
    return parse_system(read_file(path), mode);
}

std::string serialize_system(const S0LSystem& g, Tokenization mode) {
    require_chars_renderable(g.alphabet(), mode);
    std::string out = "axiom: " + format_word(g.axiom(), mode) + "\n";
    for (const auto& [p, v] : g.prob()) {
        out += "rule: " + format_production(p, mode) + " p=" + format_number(v);
        if (g.is_default(p)) out += " # default";
        out += '\n';
    }
    return out;
}

std::string serialize_free_system(const Partial0LSystem& g, Tokenization mode) {
    require_chars_renderable(g.alphabet(), mode);
    std::string out = "axiom: " + format_word(g.axiom(), mode) + "\nalphabet:";
    for (const auto& s : g.alphabet()) out += " " + s.name();
    out += '\n';
    for (const auto& p : g.productions()) out += "rule: " + format_production(p, mode) + "\n";
    std::string bare;
    for (const auto& s : g.alphabet())
        if (g.productions_for(s).empty()) bare += " " + s.name();
    if (!bare.empty()) out += "# no productions:" + bare + "\n";
    return out;
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace lsys
