#pragma once

// The single most probable derivation of a trace, over all stochastic
// 0L-systems.
//
// For a fixed derivation d the best probabilities are the empirical
// frequencies #_{d,a->y} / (occurrences of a in w_0..w_{m-1}), which gives
// the bound
//
//     p(d) <= prod_v N_v^(-N_v) * prod_{a->y in P(d)} #^#,
//
// with N_v the occurrence count of v. The bound is attained, so the best
// derivation is found by maximizing it over the derivations of the free
// system.

#include <cstdint>
#include <vector>

#include "lsys/derivation.hpp"
#include "lsys/model.hpp"

namespace lsys {

/// maximize prod x_i^{n_i} subject to sum a_i x_i = C, x_i >= 0.
struct SimplexProductProblem {
    std::vector<std::uint64_t> exponents;
    std::vector<double> coefficients;
    double budget = 1.0;

    SimplexProductProblem(std::vector<std::uint64_t> exponents, std::vector<double> coefficients, double budget);
};

struct SimplexProductSolution {
    std::vector<double> argmax;
    double value = 0.0;
    double log_value = 0.0;
};

/// Closed form: x_i = C n_i / (N a_i), value (C/N)^N prod (n_i/a_i)^{n_i}.
SimplexProductSolution simplex_product_max(const SimplexProductProblem& p);

struct Bound {
    double log_value = 0.0;
    double value = 1.0;
};

/// The attainable upper bound on p(d) for a derivation of theta with the
/// given production counts. Letters never rewritten contribute a factor 1.
Bound derivation_bound(const Sequence& theta, const ProductionCounts& counts);

struct BestDerivation {
    Derivation derivation;
    S0LSystem system;
    double value = 0.0;
    double log_value = 0.0;
    /// Derivations visited and distinct count vectors evaluated.
    std::uint64_t derivations_seen = 0;
    std::uint64_t distinct_counts = 0;
};

/// Exhaustive search over the free system's derivations; the first maximum
/// in enumeration order wins. The returned system has axiom w_0, the
/// productions of the winning derivation and their empirical frequencies.
BestDerivation best_derivation(const Sequence& theta, std::uint64_t cap = kDefaultDerivationCap);

}  // namespace lsys
