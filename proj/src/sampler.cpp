#include "lsys/sampler.hpp"

#include <map>
#include <vector>

#include "lsys/error.hpp"

namespace lsys {

namespace {

struct Choice {
    const Production* production;
    double cumulative;
};

using ChoiceTable = std::map<Symbol, std::vector<Choice>>;

ChoiceTable choice_table(const S0LSystem& g) {
    ChoiceTable table;
    for (const auto& [p, v] : g.prob()) {
        auto& row = table[p.predecessor];
        double prev = row.empty() ? 0.0 : row.back().cumulative;
        row.push_back({&p, prev + v});
    }
    return table;
}

const Production& draw(const std::vector<Choice>& row, Rng& rng) {
    // Scale by the row total so rounding in the stored probabilities cannot
    // leave a gap at the top.
    double u = rng.uniform() * row.back().cumulative;
    for (const auto& c : row)
        if (u < c.cumulative) return *c.production;
    return *row.back().production;
}

std::pair<Word, StepAssignment> step_with(const ChoiceTable& table, const Word& w, Rng& rng) {
    StepAssignment a{w, Word{}, {}};
    a.parts.reserve(w.size());
    Word next;
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto it = table.find(w[i]);
        if (it == table.end())
            throw Error(ErrorKind::MissingProduction,
                        "symbol '" + w[i].name() + "' at position " + std::to_string(i + 1) + " has no production");
        const auto& p = draw(it->second, rng);
        next += p.successor;
        if (next.size() > kMaxSampledWordLength)
            throw Error(ErrorKind::WordTooLong,
                        "sampled word exceeds " + std::to_string(kMaxSampledWordLength) + " symbols");
        a.parts.push_back(p.successor);
    }
    a.target = next;
    return {std::move(next), std::move(a)};
}

}  // namespace

std::pair<Word, StepAssignment> derive_step(const S0LSystem& g, const Word& w, Rng& rng) {
    return step_with(choice_table(g), w, rng);
}

SampleRecord sample_sequence(const S0LSystem& g, std::size_t steps, std::uint64_t seed) {
    if (steps == 0) throw Error(ErrorKind::InvalidArgument, "steps must be positive");
    auto table = choice_table(g);
    Rng rng(seed);
    std::vector<Word> words{g.axiom()};
    Derivation d;
    for (std::size_t j = 0; j < steps; ++j) {
        auto [next, assignment] = step_with(table, words.back(), rng);
        words.push_back(std::move(next));
        d.steps.push_back(std::move(assignment));
    }
    double p = derivation_probability(g, d);
    return SampleRecord{Sequence(std::move(words)), std::move(d), p, seed};
}

}  // namespace lsys
