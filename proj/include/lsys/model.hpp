#pragma once

// Domain types for context-free L-systems: symbols, words, traces,
// productions, partial 0L-systems and stochastic 0L-systems.
//
// Word positions are 1-based in documentation and messages (w[1] is the
// first letter); the containers themselves are ordinary 0-based vectors.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lsys {

/// One letter of the alphabet, identified by its token text.
class Symbol {
public:
    Symbol() = default;
    explicit Symbol(std::string name) : name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

    friend bool operator==(const Symbol&, const Symbol&) = default;
    friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
        return a.name_.compare(b.name_) <=> 0;
    }

private:
    std::string name_;
};

using Alphabet = std::set<Symbol>;

/// A possibly empty string over the alphabet.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
    Word(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}

    /// Splits text into one symbol per Unicode scalar (UTF-8).
    static Word from_chars(std::string_view text);
    /// Splits text on whitespace; each token is one symbol.
    static Word from_tokens(std::string_view text);

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }

    /// 0-based access.
    const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
    /// 1-based access, w[i] with 1 <= i <= |w|.
    const Symbol& at1(std::size_t i) const;

    std::span<const Symbol> symbols() const noexcept { return symbols_; }
    auto begin() const noexcept { return symbols_.begin(); }
    auto end() const noexcept { return symbols_.end(); }

    /// Contiguous factor [first, last) as a new word.
    Word slice(std::size_t first, std::size_t last) const;

    /// |w|_a, the number of occurrences of a.
    std::size_t count(const Symbol& a) const;

    Word& operator+=(const Word& other);
    friend Word operator+(Word a, const Word& b) { return a += b; }

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        return std::lexicographical_compare_three_way(a.symbols_.begin(), a.symbols_.end(),
                                                      b.symbols_.begin(), b.symbols_.end());
    }

private:
    std::vector<Symbol> symbols_;
};

/// Concatenates symbol names when every symbol is a single scalar,
/// otherwise joins them with single spaces. Empty word renders as "<eps>".
std::string to_string(const Word& w);
std::string to_string(const Symbol& s);

/// A trace theta = (w_0, ..., w_m) with m >= 1.
class Sequence {
public:
    explicit Sequence(std::vector<Word> words);

    /// m, the number of derivation steps.
    std::size_t steps() const noexcept { return words_.size() - 1; }
    std::size_t size() const noexcept { return words_.size(); }
    const Word& operator[](std::size_t j) const { return words_[j]; }
    const std::vector<Word>& words() const noexcept { return words_; }

    /// Every symbol occurring in any word.
    Alphabet alphabet() const;

    friend bool operator==(const Sequence&, const Sequence&) = default;

private:
    std::vector<Word> words_;
};

/// Sum over w_0..w_{m-1} of |w_i|_a; the last word is excluded.
std::size_t letter_occurrences(const Sequence& theta, const Symbol& a);

/// A rewrite rule a -> x. The successor may be empty.
struct Production {
    Symbol predecessor;
    Word successor;

    friend bool operator==(const Production&, const Production&) = default;
    friend std::strong_ordering operator<=>(const Production& a, const Production& b) {
        if (auto c = a.predecessor <=> b.predecessor; c != 0) return c;
        return a.successor <=> b.successor;
    }
};

std::string to_string(const Production& p);

/// Canonically ordered (predecessor, then successor) set of productions.
using ProductionSet = std::set<Production>;

/// Nonnegative weight per production; the unconstrained form of a probability map.
using WeightMap = std::map<Production, double>;

/// G = (V, omega, P) where some letters may have no production.
class Partial0LSystem {
public:
    Partial0LSystem(Alphabet alphabet, Word axiom, ProductionSet productions);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const Word& axiom() const noexcept { return axiom_; }
    const ProductionSet& productions() const noexcept { return productions_; }

    /// Productions whose predecessor is a, in canonical order.
    std::vector<Production> productions_for(const Symbol& a) const;
    bool has_production(const Production& p) const { return productions_.count(p) != 0; }

    friend bool operator==(const Partial0LSystem&, const Partial0LSystem&) = default;

private:
    Alphabet alphabet_;
    Word axiom_;
    ProductionSet productions_;
};

/// Absolute tolerance for the per-predecessor probability sum.
inline constexpr double kSimplexTolerance = 1e-9;

/// G = (V, omega, P, p). Probabilities lie in (0, 1] and sum to one per
/// predecessor that has productions.
class S0LSystem {
public:
    /// `defaults` marks productions that were filled in without data support
    /// (identity rules for letters never rewritten in the trace).
    S0LSystem(Partial0LSystem base, WeightMap prob, ProductionSet defaults = {});

    /// Alphabet is the axiom's symbols plus every symbol in the rules.
    static S0LSystem from_rules(Word axiom, WeightMap prob, ProductionSet defaults = {});

    const Partial0LSystem& base() const noexcept { return base_; }
    const Word& axiom() const noexcept { return base_.axiom(); }
    const Alphabet& alphabet() const noexcept { return base_.alphabet(); }
    const ProductionSet& productions() const noexcept { return base_.productions(); }
    const WeightMap& prob() const noexcept { return prob_; }
    const ProductionSet& defaults() const noexcept { return defaults_; }

    /// prob(a -> x), or 0 when the production is absent.
    double probability(const Production& p) const;
    bool is_default(const Production& p) const { return defaults_.count(p) != 0; }

    friend bool operator==(const S0LSystem&, const S0LSystem&) = default;

private:
    Partial0LSystem base_;
    WeightMap prob_;
    ProductionSet defaults_;
};

}  // namespace lsys
