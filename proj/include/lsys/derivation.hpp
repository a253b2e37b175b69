#pragma once

// Derivations of a trace, their production counts and probabilities.
//
// Two routes to p(theta) are provided: sequence_probability_naive sums p(d)
// over the enumerated derivations exactly as defined, and
// sequence_probability evaluates the per-step factorization with scaled
// dynamic programming. The naive route is the reference the fast one is
// tested against.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lsys/compositions.hpp"
#include "lsys/model.hpp"
#include "lsys/step_lattice.hpp"

namespace lsys {

inline constexpr std::uint64_t kDefaultDerivationCap = 10'000'000;

/// One StepAssignment per step; steps[j] rewrites w_j into w_{j+1}.
struct Derivation {
    std::vector<StepAssignment> steps;

    /// The trace (w_0, ..., w_m) this derivation generates.
    Sequence trace() const;

    friend bool operator==(const Derivation&, const Derivation&) = default;
};

/// #_{d, a->y} for every production used by a derivation.
using ProductionCounts = std::map<Production, std::uint64_t>;

/// Walks the valid splits of one step (every induced production allowed)
/// in increasing cut order.
class ValidSplitCursor {
public:
    explicit ValidSplitCursor(const StepTable& table);

    /// Moves to the first valid split; false if there is none.
    bool reset();
    /// Moves to the next valid split; false when exhausted.
    bool advance();

    std::span<const std::size_t> cuts() const noexcept { return cuts_; }

    /// Number of valid splits, saturating.
    std::uint64_t count() const;

private:
    bool allowed(std::size_t i, std::size_t s, std::size_t e) const;
    void fill_from(std::size_t i);

    const StepTable* table_;
    // reach_[i][s]: positions i.. can cover y[s, |y|).
    std::vector<std::vector<bool>> reach_;
    std::vector<std::size_t> cuts_;
};

/// Lazy, deterministic stream over Der_G(theta). Order is lexicographic in
/// the per-step split indices with the last step varying fastest.
class DerivationStream {
public:
    DerivationStream(const ProductionSet& productions, Sequence theta, std::uint64_t cap);

    DerivationStream(const DerivationStream&) = delete;
    DerivationStream& operator=(const DerivationStream&) = delete;
    DerivationStream(DerivationStream&&) = default;

    /// Next derivation; throws CapExceededError before yielding item cap+1.
    std::optional<Derivation> next();

    std::uint64_t produced() const noexcept { return produced_; }
    /// |Der_G(theta)|, saturating at kCountCeiling.
    std::uint64_t total() const;

private:
    Derivation current() const;

    Sequence theta_;
    std::vector<StepTable> tables_;
    std::vector<ValidSplitCursor> cursors_;
    std::uint64_t cap_;
    std::uint64_t produced_ = 0;
    bool done_ = false;
};

/// Throws IncompatibleSequenceError if some step has no valid split.
DerivationStream enumerate_derivations(const Partial0LSystem& system, const Sequence& theta,
                                       std::uint64_t cap = kDefaultDerivationCap);

/// |Der_G(theta)| without enumeration, saturating; 0 if incompatible.
std::uint64_t count_derivations(const Partial0LSystem& system, const Sequence& theta);

ProductionCounts count_productions(const Derivation& d);

/// Product of the applied production probabilities; 0 if any is absent.
double derivation_probability(const S0LSystem& g, const Derivation& d);
double derivation_log_probability(const S0LSystem& g, const Derivation& d);

/// Exact sum of p(d) over the derivation stream; 0 if theta is incompatible.
double sequence_probability_naive(const S0LSystem& g, const Sequence& theta,
                                  std::uint64_t cap = kDefaultDerivationCap);

struct LogProb {
    double log_value = kLogZero;
    /// exp(log_value); may underflow to 0 for long traces.
    double value = 0.0;
};

LogProb sequence_probability(const S0LSystem& g, const Sequence& theta);
/// Same recursion for arbitrary nonnegative weights (not necessarily normalized).
LogProb sequence_probability(const WeightMap& weights, const Sequence& theta);

/// d p(theta) / d prob(a -> y) for every production of g.
WeightMap probability_gradient(const S0LSystem& g, const Sequence& theta);
WeightMap probability_gradient(const WeightMap& weights, const Sequence& theta);

}  // namespace lsys
