#pragma once

// Test-only reference computations. Nothing here calls into the DP,
// enumeration cursors or solver it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lsys/model.hpp"
#include "lsys/random.hpp"

namespace lsys::testing {

inline Word w(const char* s) { return Word::from_chars(s); }
inline Symbol sym(const char* s) { return Symbol(s); }
inline Production prod(const char* a, const char* succ) { return {Symbol(a), Word::from_chars(succ)}; }
inline Sequence seq(std::initializer_list<const char*> words) {
    std::vector<Word> ws;
    for (auto s : words) ws.push_back(Word::from_chars(s));
    return Sequence(std::move(ws));
}

/// The two worked systems: G1 has three equiprobable A-rules and identity
/// rules for B and C; G2 likewise with A -> AB | BA | A.
inline S0LSystem g1() {
    WeightMap m{{prod("A", "ABA"), 1.0 / 3}, {prod("A", "B"), 1.0 / 3}, {prod("A", "AC"), 1.0 / 3},
                {prod("B", "B"), 1.0}, {prod("C", "C"), 1.0}};
    return S0LSystem::from_rules(w("AAA"), m);
}
inline S0LSystem g2() {
    WeightMap m{{prod("A", "AB"), 1.0 / 3}, {prod("A", "BA"), 1.0 / 3}, {prod("A", "A"), 1.0 / 3},
                {prod("B", "B"), 1.0}, {prod("C", "C"), 1.0}};
    return S0LSystem::from_rules(w("AA"), m);
}

/// Every split of y into |x| ordered parts, by plain recursion.
inline std::vector<std::vector<Word>> brute_force_splits(const Word& x, const Word& y) {
    std::vector<std::vector<Word>> out;
    std::vector<Word> parts;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t start) {
        if (i == x.size()) {
            if (start == y.size()) out.push_back(parts);
            return;
        }
        for (std::size_t e = start; e <= y.size(); ++e) {
            parts.push_back(y.slice(start, e));
            rec(i + 1, e);
            parts.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// p(theta) by brute force: for every step, every split, multiply the
/// looked-up probabilities; sum over the per-step product.
inline double brute_force_probability(const WeightMap& prob, const Sequence& theta) {
    double total = 1.0;
    for (std::size_t j = 0; j < theta.steps(); ++j) {
        double step = 0.0;
        for (const auto& parts : brute_force_splits(theta[j], theta[j + 1])) {
            double term = 1.0;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                auto it = prob.find(Production{theta[j][i], parts[i]});
                term *= it == prob.end() ? 0.0 : it->second;
            }
            step += term;
        }
        total *= step;
    }
    return total;
}

/// Random point on the probability simplex of the given dimension.
inline std::vector<double> random_simplex_point(Rng& rng, std::size_t n) {
    std::vector<double> x(n);
    double s = 0.0;
    for (auto& v : x) s += v = rng.exponential();
    for (auto& v : x) v /= s;
    return x;
}

/// Random probabilities on the given productions, one simplex per predecessor.
inline WeightMap random_probabilities(Rng& rng, const ProductionSet& productions) {
    std::map<Symbol, std::vector<Production>> blocks;
    for (const auto& p : productions) blocks[p.predecessor].push_back(p);
    WeightMap out;
    for (const auto& [_, ps] : blocks) {
        auto x = random_simplex_point(rng, ps.size());
        for (std::size_t i = 0; i < ps.size(); ++i) out.emplace(ps[i], x[i]);
    }
    return out;
}

inline Word random_word(Rng& rng, std::size_t max_len, std::size_t alphabet_size) {
    static const char* letters[] = {"A", "B", "C"};
    std::size_t len = rng.next() % (max_len + 1);
    std::vector<Symbol> out;
    for (std::size_t i = 0; i < len; ++i) out.emplace_back(letters[rng.next() % alphabet_size]);
    return Word(std::move(out));
}

/// Random S0L system over the first `alphabet_size` letters with 1..max_rules
/// productions per letter and successors of length <= max_succ.
inline S0LSystem random_system(Rng& rng, std::size_t alphabet_size, std::size_t max_rules, std::size_t max_succ,
                               std::size_t axiom_len_max, std::size_t axiom_len_min = 1) {
    static const char* letters[] = {"A", "B", "C"};
    ProductionSet ps;
    for (std::size_t a = 0; a < alphabet_size; ++a) {
        std::size_t n = 1 + rng.next() % max_rules;
        for (std::size_t k = 0; k < n; ++k) ps.insert(Production{Symbol(letters[a]), random_word(rng, max_succ, alphabet_size)});
    }
    Word axiom;
    do {
        axiom = random_word(rng, axiom_len_max, alphabet_size);
    } while (axiom.size() < axiom_len_min);
    return S0LSystem::from_rules(axiom, random_probabilities(rng, ps));
}

inline std::size_t total_length(const Sequence& theta) {
    std::size_t n = 0;
    for (const auto& x : theta.words()) n += x.size();
    return n;
}

/// Visits every point of the simplex {x >= 0, sum x = 1} in dimension n
/// whose coordinates are multiples of 1/steps.
inline void for_each_grid_point(std::size_t n, std::size_t steps, const std::function<void(const std::vector<double>&)>& fn) {
    std::vector<std::size_t> k(n, 0);
    std::vector<double> x(n, 0.0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i + 1 == n) {
            k[i] = left;
            for (std::size_t t = 0; t < n; ++t) x[t] = static_cast<double>(k[t]) / static_cast<double>(steps);
            fn(x);
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            k[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, steps);
}

/// Grid search over one simplex: coarse pass at 1/coarse, then a local pass at
/// 1/fine over the box of half-width 1/coarse around the coarse winner.
inline std::pair<std::vector<double>, double> simplex_grid_max(std::size_t n, std::size_t coarse, std::size_t fine,
                                                               const std::function<double(const std::vector<double>&)>& f) {
    std::vector<double> best;
    double best_v = -1.0;
    for_each_grid_point(n, coarse, [&](const std::vector<double>& x) {
        double v = f(x);
        if (v > best_v) best_v = v, best = x;
    });
    if (fine <= coarse || n == 1) return {best, best_v};

    // Local refinement: integer offsets on the fine grid within the box.
    const long radius = static_cast<long>(fine / coarse);
    std::vector<long> center(n);
    for (std::size_t i = 0; i < n; ++i) center[i] = std::lround(best[i] * static_cast<double>(fine));
    std::vector<long> k(n);
    std::vector<double> x(n);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long used) {
        if (i + 1 == n) {
            long last = static_cast<long>(fine) - used;
            if (last < 0 || std::labs(last - center[i]) > radius) return;
            k[i] = last;
            for (std::size_t t = 0; t < n; ++t) x[t] = static_cast<double>(k[t]) / static_cast<double>(fine);
            double v = f(x);
            if (v > best_v) best_v = v, best = x;
            return;
        }
        for (long v = std::max(0L, center[i] - radius); v <= center[i] + radius; ++v) {
            if (used + v > static_cast<long>(fine)) break;
            k[i] = v;
            rec(i + 1, used + v);
        }
    };
    rec(0, 0);
    return {best, best_v};
}

}  // namespace lsys::testing
