#pragma once

// Text formats.
//
// Sequence file: one word per line, w_0 first. Blank lines and lines starting
// with '#' are skipped; a line holding only "<eps>" is the empty word. By
// default every Unicode scalar is one symbol; in token mode symbols are
// whitespace-separated tokens.
//
// System file:
//
//     axiom: AA
//     rule: A -> AB p=0.333333333333
//     rule: A -> <eps> p=1/3
//     rule: B -> B p=1 # default
//
// Rules are written in canonical order with 12 significant digits; exact
// fractions are accepted on input. The "# default" marker flags identity
// rules filled in for letters the data never rewrites.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "lsys/model.hpp"

namespace lsys {

enum class Tokenization { Chars, Tokens };

std::string read_file(const std::filesystem::path& path);

Sequence parse_sequence(std::string_view text, Tokenization mode = Tokenization::Chars);
Sequence parse_sequence_file(const std::filesystem::path& path, Tokenization mode = Tokenization::Chars);
std::string serialize_sequence(const Sequence& theta, Tokenization mode = Tokenization::Chars);

S0LSystem parse_system(std::string_view text, Tokenization mode = Tokenization::Chars);
S0LSystem parse_system_file(const std::filesystem::path& path, Tokenization mode = Tokenization::Chars);
std::string serialize_system(const S0LSystem& g, Tokenization mode = Tokenization::Chars);

/// Like serialize_system without probabilities, plus an alphabet line and a
/// comment listing letters that have no production.
std::string serialize_free_system(const Partial0LSystem& g, Tokenization mode = Tokenization::Chars);

/// Word rendering for the given mode ("<eps>" for the empty word).
std::string format_word(const Word& w, Tokenization mode);
std::string format_production(const Production& p, Tokenization mode);

/// Parses "0.25", "1e-3" or "2/9".
double parse_probability(std::string_view text);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace lsys
