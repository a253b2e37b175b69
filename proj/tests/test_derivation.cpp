#include "doctest.h"

#include <cmath>

#include "lsys/derivation.hpp"
#include "lsys/error.hpp"
#include "lsys/free_system.hpp"
#include "lsys/sampler.hpp"
#include "support.hpp"

using namespace lsys;
using namespace lsys::testing;

namespace {

std::vector<Derivation> all_derivations(const Partial0LSystem& g, const Sequence& theta, std::uint64_t cap = 1000000) {
    std::vector<Derivation> out;
    auto s = enumerate_derivations(g, theta, cap);
    while (auto d = s.next()) out.push_back(std::move(*d));
    return out;
}

Derivation single_step(const char* x, std::initializer_list<const char*> parts) {
    StepAssignment a{w(x), {}, {}};
    for (auto p : parts) {
        a.parts.push_back(w(p));
        a.target += w(p);
    }
    return Derivation{{a}};
}

}  // namespace

TEST_CASE("G1 derives ABABAC from AAA in exactly one way") {
    auto theta = seq({"AAA", "ABABAC"});
    auto ds = all_derivations(g1().base(), theta);
    REQUIRE(ds.size() == 1);
    auto expected = single_step("AAA", {"ABA", "B", "AC"});
    CHECK(ds[0] == expected);
    CHECK(ds[0].trace() == theta);
    CHECK(count_productions(ds[0]) ==
          ProductionCounts{{prod("A", "ABA"), 1}, {prod("A", "B"), 1}, {prod("A", "AC"), 1}});

    CHECK(std::abs(derivation_probability(g1(), ds[0]) - 1.0 / 27) <= 1e-12);
    CHECK(std::abs(sequence_probability_naive(g1(), theta) - 1.0 / 27) <= 1e-12);
    auto dp = sequence_probability(g1(), theta);
    CHECK(std::abs(dp.value - 1.0 / 27) <= 1e-12);
    CHECK(std::abs(dp.log_value + std::log(27.0)) <= 1e-12);
}

TEST_CASE("G2 derives ABA from AA in two ways") {
    auto theta = seq({"AA", "ABA"});
    auto ds = all_derivations(g2().base(), theta);
    REQUIRE(ds.size() == 2);
    CHECK(ds[0] == single_step("AA", {"A", "BA"}));
    CHECK(ds[1] == single_step("AA", {"AB", "A"}));
    for (const auto& d : ds) CHECK(std::abs(derivation_probability(g2(), d) - 1.0 / 9) <= 1e-12);
    CHECK(std::abs(sequence_probability_naive(g2(), theta) - 2.0 / 9) <= 1e-12);
    CHECK(std::abs(sequence_probability(g2(), theta).value - 2.0 / 9) <= 1e-12);
    CHECK(count_derivations(g2().base(), theta) == 2);
}

TEST_CASE("enumeration over free systems") {
    auto theta = seq({"AA", "ABA"});
    auto free = build_free_system(theta);
    CHECK(all_derivations(free, theta).size() == 4);
    CHECK(count_derivations(free, theta) == 4);
    CHECK(all_derivations(build_free_system(seq({"A", "B"})), seq({"A", "B"})).size() == 1);

    auto d = all_derivations(free, theta)[0];
    CHECK(count_productions(d) == ProductionCounts{{prod("A", ""), 1}, {prod("A", "ABA"), 1}});

    auto same = seq({"AA", "AA"});
    auto id = Partial0LSystem({sym("A")}, w("AA"), {prod("A", "A")});
    auto ds = all_derivations(id, same);
    REQUIRE(ds.size() == 1);
    CHECK(count_productions(ds[0]) == ProductionCounts{{prod("A", "A"), 2}});
}

TEST_CASE("multi-step enumeration varies the last step fastest") {
    auto theta = seq({"A", "AA", "AAA"});
    auto free = build_free_system(theta);
    auto ds = all_derivations(free, theta);
    // One way for the first step, C(4,1) = 4 for the second.
    REQUIRE(ds.size() == 4);
    for (std::size_t k = 0; k < ds.size(); ++k) {
        CHECK(ds[k].steps[0].parts == std::vector<Word>{w("AA")});
        CHECK(ds[k].trace() == theta);
    }
    CHECK(ds[0].steps[1].parts == std::vector<Word>{w(""), w("AAA")});
    CHECK(ds[3].steps[1].parts == std::vector<Word>{w("AAA"), w("")});
}

TEST_CASE("deterministic systems give probability one") {
    auto g = S0LSystem::from_rules(w("A"), {{prod("A", "AB"), 1.0}, {prod("B", "A"), 1.0}});
    auto theta = seq({"A", "AB", "ABA", "ABAAB"});
    auto ds = all_derivations(g.base(), theta);
    REQUIRE(ds.size() == 1);
    CHECK(derivation_probability(g, ds[0]) == 1.0);
    CHECK(sequence_probability(g, theta).value == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("missing productions give probability zero") {
    auto g = S0LSystem::from_rules(w("AB"), {{prod("A", "A"), 1.0}});
    auto theta = seq({"AB", "AB"});
    CHECK(sequence_probability_naive(g, theta) == 0.0);
    CHECK(sequence_probability(g, theta).value == 0.0);
    CHECK(sequence_probability(g, theta).log_value == kLogZero);
    CHECK(count_derivations(g.base(), theta) == 0);
    CHECK_THROWS_AS(enumerate_derivations(g.base(), theta), IncompatibleSequenceError);

    // A derivation using a production the system lacks.
    CHECK(derivation_probability(g, single_step("A", {"B"})) == 0.0);
    CHECK(derivation_log_probability(g, single_step("A", {"B"})) == kLogZero);
}

TEST_CASE("incompatible traces report the failing step") {
    auto g = S0LSystem::from_rules(w("A"), {{prod("A", ""), 0.5}, {prod("A", "A"), 0.5}});
    auto theta = seq({"A", "", "A"});
    try {
        enumerate_derivations(g.base(), theta);
        FAIL("expected an error");
    } catch (const IncompatibleSequenceError& e) {
        CHECK(e.step() == 1);
    }
    CHECK(sequence_probability_naive(g, theta) == 0.0);
    CHECK(sequence_probability(g, theta).value == 0.0);
}

TEST_CASE("the cap aborts before yielding item cap+1") {
    auto theta = seq({"AAAA", "AAAAAA"});
    auto free = build_free_system(theta);
    REQUIRE(count_derivations(free, theta) == 84);  // C(9, 3)
    auto s = enumerate_derivations(free, theta, 10);
    std::uint64_t got = 0;
    try {
        while (s.next()) ++got;
        FAIL("expected the cap to trip");
    } catch (const CapExceededError& e) {
        CHECK(e.partial_count() == 10);
        CHECK(e.kind() == ErrorKind::CapExceeded);
    }
    CHECK(got == 10);

    auto exact = enumerate_derivations(free, theta, 84);
    std::uint64_t n = 0;
    while (exact.next()) ++n;
    CHECK(n == 84);
    CHECK(exact.total() == 84);

    Rng rng(3);
    auto g = S0LSystem::from_rules(w("AAAA"), random_probabilities(rng, free.productions()));
    CHECK_THROWS_AS(sequence_probability_naive(g, theta, 5), CapExceededError);
}

TEST_CASE("the factored evaluation survives underflow") {
    // 400 letters kept in place by a probability-1/2 rule for three steps:
    // one derivation, p = 2^-1200, far below the double range.
    auto g = S0LSystem::from_rules(w("A"), {{prod("A", "A"), 0.5}, {prod("A", "B"), 0.5}, {prod("B", "B"), 1.0}});
    std::string a(400, 'A');
    auto theta = seq({a.c_str(), a.c_str(), a.c_str(), a.c_str()});
    auto r = sequence_probability(g, theta);
    CHECK(r.value == 0.0);
    CHECK(r.log_value == doctest::Approx(-1200.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("gradient examples") {
    for (double p : {0.2, 0.5, 0.9}) {
        WeightMap m{{prod("A", "A"), p}};
        auto grad = probability_gradient(m, seq({"A", "A", "A"}));
        CHECK(grad.at(prod("A", "A")) == doctest::Approx(2 * p).epsilon(1e-14));
    }
    auto grad = probability_gradient(g2(), seq({"AA", "ABA"}));
    CHECK(std::abs(grad.at(prod("A", "A")) - 2.0 / 3) <= 1e-12);
    CHECK(std::abs(grad.at(prod("A", "AB")) - 1.0 / 3) <= 1e-12);
    CHECK(std::abs(grad.at(prod("A", "BA")) - 1.0 / 3) <= 1e-12);
    CHECK(grad.at(prod("B", "B")) == 0.0);
}

TEST_CASE("property: factored and enumerated probabilities agree") {
    Rng rng(7);
    int compared = 0, positive = 0;
    while (compared < 300) {
        auto g = random_system(rng, 1 + rng.next() % 2, 3, 2, 3);
        Sequence theta = sample_sequence(g, 1 + rng.next() % 3, rng.next()).sequence;
        if (total_length(theta) > 10) continue;
        // Half the time score the trace under an unrelated dense system.
        WeightMap weights = g.prob();
        if (compared % 2) weights = random_probabilities(rng, build_free_system(theta).productions());
        auto h = S0LSystem::from_rules(theta[0], weights);

        double naive = sequence_probability_naive(h, theta);
        double dp = sequence_probability(h, theta).value;
        double brute = brute_force_probability(weights, theta);
        REQUIRE(std::abs(naive - dp) <= 1e-12);
        REQUIRE(std::abs(brute - dp) <= 1e-12);
        ++compared;
        positive += dp > 0;
    }
    CHECK(positive > 200);
}

TEST_CASE("property: counts are multi-homogeneous and probabilities sum") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = random_system(rng, 2, 3, 2, 3);
        auto theta = sample_sequence(g, 2, rng.next()).sequence;
        if (total_length(theta) > 12) continue;
        auto free = build_free_system(theta);
        auto weights = random_probabilities(rng, free.productions());
        auto h = S0LSystem::from_rules(theta[0], weights);

        double sum = 0.0;
        auto s = enumerate_derivations(free, theta, 1000000);
        while (auto d = s.next()) {
            std::map<Symbol, std::uint64_t> per_letter;
            for (const auto& [p, c] : count_productions(*d)) per_letter[p.predecessor] += c;
            for (const auto& a : theta.alphabet())
                REQUIRE(per_letter[a] == letter_occurrences(theta, a));
            double pd = derivation_probability(h, *d);
            REQUIRE(pd <= 1.0);
            sum += pd;
        }
        CHECK(sum == doctest::Approx(sequence_probability_naive(h, theta)).epsilon(1e-14));
        CHECK(s.produced() == count_derivations(free, theta));
    }
}

TEST_CASE("property: gradient matches central differences") {
    Rng rng(5);
    const double h = 1e-6;
    int checked = 0;
    while (checked < 60) {
        auto g = random_system(rng, 2, 3, 2, 3);
        auto theta = sample_sequence(g, 1 + rng.next() % 2, rng.next()).sequence;
        if (total_length(theta) > 10) continue;
        auto weights = random_probabilities(rng, build_free_system(theta).productions());
        auto grad = probability_gradient(weights, theta);

        double scale = 0.0;
        for (const auto& [_, v] : grad) scale = std::max(scale, std::abs(v));
        if (scale == 0.0) continue;
        for (const auto& [p, v] : grad) {
            WeightMap up = weights, down = weights;
            up[p] += h;
            down[p] -= h;
            double fd = (brute_force_probability(up, theta) - brute_force_probability(down, theta)) / (2 * h);
            REQUIRE(std::abs(fd - v) / scale <= 1e-6);
        }
        ++checked;
    }
}
