#include "lsys/optimal_system.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lsys/error.hpp"
#include "lsys/free_system.hpp"
#include "lsys/random.hpp"

namespace lsys {

PosynomialObjective::PosynomialObjective(Partial0LSystem free_system, Sequence theta)
    : free_(std::move(free_system)), factored_(free_.productions(), std::move(theta)) {}

void PosynomialObjective::expand(std::uint64_t cap) {
    auto stream = enumerate_derivations(free_, sequence(), cap);
    std::vector<Monomial> out;
    std::map<ProductionCounts, std::size_t> slot;
    while (auto d = stream.next()) {
        auto counts = count_productions(*d);
        auto [it, fresh] = slot.emplace(counts, out.size());
        if (fresh) {
            Monomial m{0, {}};
            for (const auto& [p, c] : counts) m.exponents.emplace_back(*factored_.index().find(p), c);
            out.push_back(std::move(m));
        }
        ++out[it->second].coefficient;
    }
    monomials_ = std::move(out);
}

WeightMap PosynomialObjective::to_map(std::span<const double> x) const {
    WeightMap out;
    for (std::size_t v = 0; v < x.size(); ++v) out.emplace(variables()[v], x[v]);
    return out;
}

double PosynomialObjective::evaluate_expanded(std::span<const double> x) const {
    if (!monomials_) throw Error(ErrorKind::InvalidArgument, "objective was not expanded");
    double total = 0.0;
    for (const auto& m : *monomials_) {
        double term = static_cast<double>(m.coefficient);
        for (const auto& [v, e] : m.exponents) term *= std::pow(x[v], static_cast<double>(e));
        total += term;
    }
    return total;
}

PosynomialObjective build_objective(const Sequence& theta, std::uint64_t cap) {
    PosynomialObjective obj(build_free_system(theta), theta);
    if (count_derivations(obj.free_system(), theta) <= cap) obj.expand(cap);
    return obj;
}

double evaluate_objective(const PosynomialObjective& obj, std::span<const double> x) {
    double lv = obj.factored().log_value(x);
    return lv == kLogZero ? 0.0 : std::exp(lv);
}

double evaluate_objective(const PosynomialObjective& obj, const WeightMap& x) {
    return evaluate_objective(obj, obj.point_from(x));
}

void SolverConfig::validate() const {
    if (restarts == 0) throw Error(ErrorKind::InvalidArgument, "restarts must be positive");
    if (max_iters == 0) throw Error(ErrorKind::InvalidArgument, "max-iters must be positive");
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw Error(ErrorKind::InvalidArgument, "tol must lie in (0,1)");
    if (!(prune_eps > 0.0 && prune_eps < 1.0)) throw Error(ErrorKind::InvalidArgument, "prune-eps must lie in (0,1)");
}

namespace {

using Blocks = std::map<Symbol, std::vector<std::size_t>>;

std::vector<double> starting_point(const Blocks& blocks, std::size_t nvars, std::size_t restart, std::uint64_t seed) {
    std::vector<double> x(nvars, 0.0);
    if (restart == 0) {
        for (const auto& [_, vars] : blocks)
            for (auto v : vars) x[v] = 1.0 / static_cast<double>(vars.size());
        return x;
    }
    // Normalized Exp(1) draws are uniform on the simplex.
    Rng rng(derive_seed(seed, restart));
    for (const auto& [_, vars] : blocks) {
        double total = 0.0;
        for (auto v : vars) total += x[v] = rng.exponential();
        for (auto v : vars) x[v] /= total;
    }
    return x;
}

double feasibility_residual(const Blocks& blocks, std::span<const double> x) {
    double worst = 0.0;
    for (const auto& [_, vars] : blocks) {
        double s = 0.0;
        for (auto v : vars) s += x[v];
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

struct RestartOutcome {
    std::vector<double> x;
    double log_value;
    RestartTrace trace;
};

RestartOutcome run_restart(const PosynomialObjective& obj, const SolverConfig& cfg, std::size_t restart) {
    const auto& blocks = obj.blocks();
    const std::size_t nvars = obj.variables().size();
    auto x = starting_point(blocks, nvars, restart, cfg.seed);
    std::vector<double> log_grad(nvars);

    RestartTrace trace;
    trace.restart = restart;
    double lv = obj.factored().log_gradient(x, log_grad);
    auto linear = [](double l) { return l == kLogZero ? 0.0 : std::exp(l); };
    trace.values.push_back(linear(lv));
    trace.max_feasibility_residual = feasibility_residual(blocks, x);

    std::vector<double> next(nvars);
    for (std::size_t it = 1; it <= cfg.max_iters && lv != kLogZero; ++it) {
        // x'_v proportional to x_v g_v within each block, computed in log space.
        for (const auto& [a, vars] : blocks) {
            double lse = kLogZero;
            for (auto v : vars) {
                if (x[v] > 0.0 && log_grad[v] != kLogZero) lse = log_add(lse, std::log(x[v]) + log_grad[v]);
            }
            if (lse == kLogZero) {
                trace.degenerate_blocks.emplace_back(it, a);
                for (auto v : vars) next[v] = x[v];
                continue;
            }
            for (auto v : vars) {
                next[v] = (x[v] > 0.0 && log_grad[v] != kLogZero) ? std::exp(std::log(x[v]) + log_grad[v] - lse)
                                                                  : 0.0;
            }
        }
        double lv_next = obj.factored().log_gradient(next, log_grad);
        std::swap(x, next);
        trace.iterations = it;
        trace.values.push_back(linear(lv_next));
        trace.max_decrease = std::max(trace.max_decrease, linear(lv) - linear(lv_next));
        trace.max_feasibility_residual = std::max(trace.max_feasibility_residual, feasibility_residual(blocks, x));

        double rel = std::abs(std::expm1(lv_next - lv));
        lv = lv_next;
        if (rel < cfg.rel_tol) {
            trace.converged = true;
            break;
        }
    }
    return {std::move(x), lv, std::move(trace)};
}

}  // namespace

SolverResult maximize(const PosynomialObjective& obj, const SolverConfig& cfg) {
    cfg.validate();
    if (obj.variables().empty()) throw Error(ErrorKind::InvalidArgument, "objective has no variables");

    SolverResult result;
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        auto outcome = run_restart(obj, cfg, r);
        if (r == 0 || outcome.log_value > result.log_value) {
            result.x = std::move(outcome.x);
            result.log_value = outcome.log_value;
            result.best_restart = r;
        }
        result.trace.push_back(std::move(outcome.trace));
    }
    result.value = result.log_value == kLogZero ? 0.0 : std::exp(result.log_value);
    return result;
}

InferredSystem infer_optimal_system(const Sequence& theta, const SolverConfig& cfg) {
    cfg.validate();
    // cap 0: the solver only needs the factored form.
    auto obj = build_objective(theta, 0);

    SolverResult solver;
    WeightMap prob;
    if (!obj.variables().empty()) {
        solver = maximize(obj, cfg);
        for (const auto& [a, vars] : obj.blocks()) {
            double kept = 0.0;
            for (auto v : vars)
                if (solver.x[v] >= cfg.prune_eps) kept += solver.x[v];
            if (kept == 0.0) {
                // Every weight below the threshold; keep the heaviest production.
                auto v = *std::max_element(vars.begin(), vars.end(),
                                           [&](auto l, auto r) { return solver.x[l] < solver.x[r]; });
                prob.emplace(obj.variables()[v], 1.0);
                continue;
            }
            for (auto v : vars)
                if (solver.x[v] >= cfg.prune_eps) prob.emplace(obj.variables()[v], solver.x[v] / kept);
        }
    } else {
        solver.log_value = 0.0;
        solver.value = 1.0;
    }

    ProductionSet defaults;
    for (const auto& a : theta.alphabet()) {
        if (letter_occurrences(theta, a) != 0) continue;
        Production identity{a, Word{a}};
        prob.emplace(identity, 1.0);
        defaults.insert(identity);
    }

    auto system = S0LSystem::from_rules(theta[0], std::move(prob), std::move(defaults));
    auto lp = sequence_probability(system, theta);
    return InferredSystem{std::move(system), lp.value, lp.log_value, solver.value, std::move(solver)};
}

}  // namespace lsys
