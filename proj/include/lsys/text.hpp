#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lsys {

class Word;

/// Placeholder text for the empty word.
inline constexpr std::string_view kEpsilon = "<eps>";

/// Splits UTF-8 text into Unicode scalars; throws on malformed input.
std::vector<std::string> split_utf8(std::string_view text);

bool is_single_scalar(std::string_view text);

/// Renders a word either concatenated (one scalar per symbol) or as
/// space-separated tokens. The empty word renders as kEpsilon.
std::string render_word(const Word& w, bool tokens);

/// %.12g, with "-inf" / "inf" / "nan" spelled out.
std::string format_number(double v);

}  // namespace lsys
