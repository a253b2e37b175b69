#include "lsys/text.hpp"

#include <cmath>
#include <cstdio>

#include "lsys/error.hpp"
#include "lsys/model.hpp"

namespace lsys {

namespace {

std::size_t scalar_length(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead & 0xE0) == 0xC0) return 2;
    if ((lead & 0xF0) == 0xE0) return 3;
    if ((lead & 0xF8) == 0xF0) return 4;
    return 0;
}

}  // namespace

std::vector<std::string> split_utf8(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t n = scalar_length(static_cast<unsigned char>(text[i]));
        if (n == 0 || i + n > text.size())
            throw Error(ErrorKind::Parse, "malformed UTF-8 at byte " + std::to_string(i));
        for (std::size_t k = 1; k < n; ++k) {
            if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80)
                throw Error(ErrorKind::Parse, "malformed UTF-8 at byte " + std::to_string(i + k));
        }
        out.emplace_back(text.substr(i, n));
        i += n;
    }
    return out;
}

bool is_single_scalar(std::string_view text) {
    if (text.empty()) return false;
    std::size_t n = scalar_length(static_cast<unsigned char>(text[0]));
    return n != 0 && n == text.size();
}

std::string render_word(const Word& w, bool tokens) {
    if (w.empty()) return std::string(kEpsilon);
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (tokens && i > 0) out += ' ';
        out += w[i].name();
    }
    return out;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace lsys
