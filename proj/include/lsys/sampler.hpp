#pragma once

#include <cstdint>
#include <utility>

#include "lsys/compositions.hpp"
#include "lsys/derivation.hpp"
#include "lsys/model.hpp"
#include "lsys/random.hpp"

namespace lsys {

/// Intermediate words longer than this abort sampling with WordTooLong.
inline constexpr std::size_t kMaxSampledWordLength = 1'000'000;

struct SampleRecord {
    Sequence sequence;
    Derivation derivation;
    /// p(d) of the realized derivation.
    double probability = 0.0;
    std::uint64_t seed = 0;
};

/// One parallel rewriting step: every position independently draws a
/// production for its letter by inverting the cumulative probabilities in
/// canonical production order. Throws MissingProduction for letters without
/// rules.
std::pair<Word, StepAssignment> derive_step(const S0LSystem& g, const Word& w, Rng& rng);

/// (axiom, w_1, ..., w_steps) drawn from g; identical inputs give identical records.
SampleRecord sample_sequence(const S0LSystem& g, std::size_t steps, std::uint64_t seed);

}  // namespace lsys
