#pragma once

// Per-step lookup tables and the factored evaluation of p(theta).
//
// Derivation choices at different steps are independent, so
// p(theta) = prod_j S(w_j, w_{j+1}) where S(x, y) sums, over all splits of y
// into |x| parts, the product of the weights of x[i] -> part_i. Each S is a
// left-to-right recursion over source positions (forward table F) and its
// mirror image (backward table B), both row-scaled with the scale factors
// kept in log space.

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "lsys/model.hpp"

namespace lsys {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) with kLogZero as the additive identity.
double log_add(double a, double b);

/// Dense numbering of a production set; lookup is keyed by predecessor, then
/// by successor.
class VariableIndex {
public:
    explicit VariableIndex(const ProductionSet& productions);

    std::size_t size() const noexcept { return variables_.size(); }
    const std::vector<Production>& variables() const noexcept { return variables_; }
    const Production& variable(std::size_t v) const { return variables_[v]; }
    std::optional<std::size_t> find(const Production& p) const;

    /// Successor -> variable for predecessor a, or nullptr if a has none.
    const std::map<Word, std::size_t>* successors(const Symbol& a) const;
    /// Longest successor of a (0 if none).
    std::size_t max_successor_length(const Symbol& a) const;

    /// Variable ids grouped by predecessor, in canonical order.
    const std::map<Symbol, std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }

private:
    std::vector<Production> variables_;
    std::map<Symbol, std::map<Word, std::size_t>> by_predecessor_;
    std::map<Symbol, std::size_t> max_len_;
    std::map<Symbol, std::vector<std::size_t>> blocks_;
};

/// For one step x => y: which variable (if any) rewrites x[i] into y[s, e).
class StepTable {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    StepTable(const VariableIndex& index, const Word& x, const Word& y);

    std::size_t source_size() const noexcept { return slot_.size(); }
    std::size_t target_size() const noexcept { return len_; }

    /// Variable id for x[i] -> y[s, e) (0-based i, 0 <= s <= e <= |y|), or npos.
    std::size_t variable(std::size_t i, std::size_t s, std::size_t e) const {
        return tables_[slot_[i]][s * (len_ + 1) + e];
    }

private:
    std::size_t len_;
    std::vector<std::size_t> slot_;
    std::vector<std::vector<std::size_t>> tables_;
};

/// p(theta) as a function of the weights on a fixed production set, evaluated
/// through the per-step recursions without enumerating derivations.
class FactoredObjective {
public:
    FactoredObjective(const ProductionSet& productions, Sequence theta);

    const VariableIndex& index() const noexcept { return index_; }
    const Sequence& sequence() const noexcept { return theta_; }
    const std::vector<StepTable>& steps() const noexcept { return steps_; }

    /// Dense weight vector from a production map; productions outside the
    /// index are ignored, missing ones get weight 0.
    std::vector<double> weights_from(const WeightMap& w) const;

    /// log p(theta); kLogZero if no derivation has positive weight.
    double log_value(std::span<const double> w) const;

    /// log S(w_j, w_{j+1}) for step j.
    double log_step_value(std::size_t j, std::span<const double> w) const;

    /// Returns log p(theta) and writes log(d p / d w_v) into log_grad
    /// (size index().size()); kLogZero marks a zero partial derivative.
    double log_gradient(std::span<const double> w, std::span<double> log_grad) const;

private:
    VariableIndex index_;
    Sequence theta_;
    std::vector<StepTable> steps_;
};

}  // namespace lsys
