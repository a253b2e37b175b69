#include "lsys/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "lsys/error.hpp"
#include "lsys/text.hpp"

namespace lsys {

Word Word::from_chars(std::string_view text) {
    std::vector<Symbol> out;
    for (auto& scalar : split_utf8(text)) out.emplace_back(std::move(scalar));
    return Word(std::move(out));
}

Word Word::from_tokens(std::string_view text) {
    std::vector<Symbol> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) out.emplace_back(std::string(text.substr(start, i - start)));
    }
    return Word(std::move(out));
}

const Symbol& Word::at1(std::size_t i) const {
    if (i < 1 || i > symbols_.size())
        throw Error(ErrorKind::InvalidArgument, "word index " + std::to_string(i) +
                                                    " out of range 1.." + std::to_string(symbols_.size()));
    return symbols_[i - 1];
}

Word Word::slice(std::size_t first, std::size_t last) const {
    return Word(std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(first),
                                    symbols_.begin() + static_cast<std::ptrdiff_t>(last)));
}

std::size_t Word::count(const Symbol& a) const {
    return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), a));
}

Word& Word::operator+=(const Word& other) {
    symbols_.insert(symbols_.end(), other.symbols_.begin(), other.symbols_.end());
    return *this;
}

std::string to_string(const Symbol& s) { return s.name(); }

std::string to_string(const Word& w) {
    bool tokens = std::any_of(w.begin(), w.end(), [](const Symbol& s) { return !is_single_scalar(s.name()); });
    return render_word(w, tokens);
}

std::string to_string(const Production& p) {
    return to_string(p.predecessor) + " -> " + to_string(p.successor);
}

Sequence::Sequence(std::vector<Word> words) : words_(std::move(words)) {
    if (words_.size() < 2)
        throw Error(ErrorKind::InvalidArgument,
                    "a sequence needs at least two words, got " + std::to_string(words_.size()));
}

Alphabet Sequence::alphabet() const {
    Alphabet v;
    for (const auto& w : words_) v.insert(w.begin(), w.end());
    return v;
}

std::size_t letter_occurrences(const Sequence& theta, const Symbol& a) {
    std::size_t n = 0;
    for (std::size_t j = 0; j < theta.steps(); ++j) n += theta[j].count(a);
    return n;
}

Partial0LSystem::Partial0LSystem(Alphabet alphabet, Word axiom, ProductionSet productions)
    : alphabet_(std::move(alphabet)), axiom_(std::move(axiom)), productions_(std::move(productions)) {
    auto check = [&](const Symbol& s, const char* where) {
        if (!alphabet_.count(s))
            throw Error(ErrorKind::InvalidArgument,
                        "symbol '" + s.name() + "' in " + where + " is not in the alphabet");
    };
    for (const auto& s : axiom_) check(s, "axiom");
    for (const auto& p : productions_) {
        check(p.predecessor, "production predecessor");
        for (const auto& s : p.successor) check(s, "production successor");
    }
}

std::vector<Production> Partial0LSystem::productions_for(const Symbol& a) const {
    std::vector<Production> out;
    auto it = productions_.lower_bound(Production{a, Word{}});
    for (; it != productions_.end() && it->predecessor == a; ++it) out.push_back(*it);
    return out;
}

namespace {

ProductionSet keys_of(const WeightMap& prob) {
    ProductionSet out;
    for (const auto& [p, _] : prob) out.insert(out.end(), p);
    return out;
}

}  // namespace

S0LSystem::S0LSystem(Partial0LSystem base, WeightMap prob, ProductionSet defaults)
    : base_(std::move(base)), prob_(std::move(prob)), defaults_(std::move(defaults)) {
    if (keys_of(prob_) != base_.productions())
        throw Error(ErrorKind::InvalidArgument, "probability map domain differs from the production set");
    std::map<Symbol, double> sums;
    for (const auto& [p, v] : prob_) {
        if (!(v > 0.0 && v <= 1.0 + kSimplexTolerance))
            throw Error(ErrorKind::InvalidArgument,
                        "probability of " + to_string(p) + " must lie in (0,1], got " + std::to_string(v));
        sums[p.predecessor] += v;
    }
    for (const auto& [a, s] : sums) {
        if (std::abs(s - 1.0) > kSimplexTolerance)
            throw Error(ErrorKind::InvalidArgument,
                        "probabilities for predecessor '" + a.name() + "' sum to " + std::to_string(s));
    }
    for (const auto& d : defaults_) {
        if (!base_.has_production(d))
            throw Error(ErrorKind::InvalidArgument, "default marker on unknown production " + to_string(d));
    }
}

S0LSystem S0LSystem::from_rules(Word axiom, WeightMap prob, ProductionSet defaults) {
    Alphabet v(axiom.begin(), axiom.end());
    for (const auto& [p, _] : prob) {
        v.insert(p.predecessor);
        v.insert(p.successor.begin(), p.successor.end());
    }
    auto productions = keys_of(prob);
    return S0LSystem(Partial0LSystem(std::move(v), std::move(axiom), std::move(productions)), std::move(prob),
                     std::move(defaults));
}

double S0LSystem::probability(const Production& p) const {
    auto it = prob_.find(p);
    return it == prob_.end() ? 0.0 : it->second;
}

}  // namespace lsys
