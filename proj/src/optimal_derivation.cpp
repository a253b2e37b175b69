#include "lsys/optimal_derivation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lsys/error.hpp"
#include "lsys/free_system.hpp"

namespace lsys {

SimplexProductProblem::SimplexProductProblem(std::vector<std::uint64_t> exps, std::vector<double> coefs, double c)
    : exponents(std::move(exps)), coefficients(std::move(coefs)), budget(c) {
    if (exponents.empty() || exponents.size() != coefficients.size())
        throw Error(ErrorKind::InvalidArgument, "exponents and coefficients must be nonempty and of equal length");
    if (std::any_of(exponents.begin(), exponents.end(), [](auto n) { return n == 0; }))
        throw Error(ErrorKind::InvalidArgument, "exponents must be positive");
    if (std::any_of(coefficients.begin(), coefficients.end(), [](double a) { return !(a > 0.0); }))
        throw Error(ErrorKind::InvalidArgument, "coefficients must be positive");
    if (!(budget > 0.0)) throw Error(ErrorKind::InvalidArgument, "budget must be positive");
}

SimplexProductSolution simplex_product_max(const SimplexProductProblem& p) {
    double total = 0.0;
    for (auto n : p.exponents) total += static_cast<double>(n);

    SimplexProductSolution sol;
    sol.argmax.reserve(p.exponents.size());
    sol.log_value = total * std::log(p.budget / total);
    for (std::size_t i = 0; i < p.exponents.size(); ++i) {
        double n = static_cast<double>(p.exponents[i]);
        sol.argmax.push_back(p.budget * n / (total * p.coefficients[i]));
        sol.log_value += n * std::log(n / p.coefficients[i]);
    }
    sol.value = std::exp(sol.log_value);
    return sol;
}

namespace {

// sum c log c over the counts, summed in sorted order so that equal count
// multisets give bit-identical results.
double log_self_powers(const ProductionCounts& counts) {
    std::vector<std::uint64_t> cs;
    cs.reserve(counts.size());
    for (const auto& [_, c] : counts) cs.push_back(c);
    std::sort(cs.begin(), cs.end());
    double acc = 0.0;
    for (auto c : cs) {
        double x = static_cast<double>(c);
        acc += x * std::log(x);
    }
    return acc;
}

double log_occurrence_penalty(const Sequence& theta) {
    double acc = 0.0;
    for (const auto& v : theta.alphabet()) {
        auto n = letter_occurrences(theta, v);
        if (n == 0) continue;
        double x = static_cast<double>(n);
        acc -= x * std::log(x);
    }
    return acc;
}

}  // namespace

Bound derivation_bound(const Sequence& theta, const ProductionCounts& counts) {
    Bound b;
    b.log_value = log_occurrence_penalty(theta) + log_self_powers(counts);
    b.value = std::exp(b.log_value);
    return b;
}

BestDerivation best_derivation(const Sequence& theta, std::uint64_t cap) {
    auto free = build_free_system(theta);
    auto stream = enumerate_derivations(free, theta, cap);
    const double penalty = log_occurrence_penalty(theta);

    std::set<ProductionCounts> seen;
    std::optional<Derivation> best;
    ProductionCounts best_counts;
    double best_log = kLogZero;
    while (auto d = stream.next()) {
        auto counts = count_productions(*d);
        if (!seen.insert(counts).second) continue;
        double lv = penalty + log_self_powers(counts);
        // Strictly better by more than rounding noise; otherwise the earlier one stays.
        if (!best || lv > best_log + 1e-12 * std::max(1.0, std::abs(best_log))) {
            best = std::move(*d);
            best_counts = std::move(counts);
            best_log = lv;
        }
    }

    WeightMap prob;
    for (const auto& [p, c] : best_counts)
        prob.emplace(p, static_cast<double>(c) / static_cast<double>(letter_occurrences(theta, p.predecessor)));

    BestDerivation out{std::move(*best), S0LSystem::from_rules(theta[0], std::move(prob)), std::exp(best_log),
                       best_log, stream.produced(), seen.size()};
    return out;
}

}  // namespace lsys
