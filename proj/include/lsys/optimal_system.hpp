#pragma once

// The stochastic 0L-system maximizing p(theta) summed over all derivations.
//
// With one variable X_{a->y} per production of the free system, p(theta) is
// the polynomial sum_d prod_{j,l} X_{sigma_d(j,l)}, to be maximized over the
// product of per-predecessor probability simplices. The polynomial has
// nonnegative coefficients, so the growth transform
//
//     X'_{a->y} = X_{a->y} g_{a->y} / sum_z X_{a->z} g_{a->z},   g = grad p,
//
// never decreases it. The problem is not concave; several starting points are
// tried and the best local optimum is kept.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lsys/derivation.hpp"
#include "lsys/model.hpp"
#include "lsys/step_lattice.hpp"

namespace lsys {

/// coefficient * prod X_v^{e_v}; exponents sorted by variable id, all e_v > 0.
struct Monomial {
    std::uint64_t coefficient = 0;
    std::vector<std::pair<std::size_t, std::uint64_t>> exponents;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

class PosynomialObjective {
public:
    explicit PosynomialObjective(Partial0LSystem free_system, Sequence theta);

    const Partial0LSystem& free_system() const noexcept { return free_; }
    const Sequence& sequence() const noexcept { return factored_.sequence(); }
    const FactoredObjective& factored() const noexcept { return factored_; }

    const std::vector<Production>& variables() const noexcept { return factored_.index().variables(); }
    /// Variable ids grouped by predecessor.
    const std::map<Symbol, std::vector<std::size_t>>& blocks() const noexcept {
        return factored_.index().blocks();
    }

    /// Grouped monomials, in order of first appearance in the derivation
    /// stream; absent when the expansion did not fit under the cap.
    const std::optional<std::vector<Monomial>>& monomials() const noexcept { return monomials_; }
    /// Enumerates derivations and groups them by production counts.
    /// Throws CapExceededError when there are more than cap derivations.
    void expand(std::uint64_t cap);

    /// Dense point from a production map (unknown productions ignored).
    std::vector<double> point_from(const WeightMap& x) const { return factored_.weights_from(x); }
    WeightMap to_map(std::span<const double> x) const;

    /// Sum over the grouped monomials; requires an expanded objective.
    double evaluate_expanded(std::span<const double> x) const;

private:
    Partial0LSystem free_;
    FactoredObjective factored_;
    std::optional<std::vector<Monomial>> monomials_;
};

/// Objective over the free system of theta. Monomials are expanded only if
/// theta has at most `cap` derivations; the factored form is always built.
PosynomialObjective build_objective(const Sequence& theta, std::uint64_t cap = kDefaultDerivationCap);

/// Value at x through the factored recursion.
double evaluate_objective(const PosynomialObjective& obj, std::span<const double> x);
double evaluate_objective(const PosynomialObjective& obj, const WeightMap& x);

struct SolverConfig {
    std::size_t restarts = 16;
    std::size_t max_iters = 5000;
    double rel_tol = 1e-10;
    double prune_eps = 1e-9;
    std::uint64_t seed = 0;

    /// Throws ErrorKind::InvalidArgument on out-of-range settings.
    void validate() const;
};

struct RestartTrace {
    std::size_t restart = 0;
    /// Objective at the starting point and after every update.
    std::vector<double> values;
    std::size_t iterations = 0;
    bool converged = false;
    /// Largest drop between consecutive values (0 if monotone).
    double max_decrease = 0.0;
    /// Largest |sum of block - 1| over all iterates.
    double max_feasibility_residual = 0.0;
    /// (iteration, predecessor) pairs where a block had no gradient mass and was left unchanged.
    std::vector<std::pair<std::size_t, Symbol>> degenerate_blocks;
};

struct SolverResult {
    std::vector<double> x;
    double value = 0.0;
    double log_value = kLogZero;
    std::size_t best_restart = 0;
    std::vector<RestartTrace> trace;
};

/// Multi-start growth-transform ascent. Restart 0 starts from the uniform
/// point, the others from points drawn uniformly on each simplex.
SolverResult maximize(const PosynomialObjective& obj, const SolverConfig& cfg);

struct InferredSystem {
    S0LSystem system;
    /// p(theta) under the emitted (pruned, renormalized) system.
    double value = 0.0;
    double log_value = kLogZero;
    /// Objective at the solver's point before pruning.
    double solver_value = 0.0;
    SolverResult solver;
};

/// Axiom w_0, productions with solver weight >= prune_eps renormalized per
/// predecessor, plus an identity rule a -> a (marked default) for each
/// letter that is never rewritten in theta.
InferredSystem infer_optimal_system(const Sequence& theta, const SolverConfig& cfg = {});

}  // namespace lsys
