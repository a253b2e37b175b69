#pragma once

// Splitting a target word into |x| ordered, possibly empty parts: one part
// per letter of the source word. Each split fixes the production applied at
// every source position for a single parallel rewriting step.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "lsys/model.hpp"

namespace lsys {

/// One way of deriving `target` from `source` in a single step.
struct StepAssignment {
    Word source;
    Word target;
    /// parts[i] is the successor assigned to source[i]; concat(parts) == target.
    std::vector<Word> parts;

    /// The production applied at 0-based position i.
    Production production(std::size_t i) const { return {source[i], parts[i]}; }

    friend bool operator==(const StepAssignment&, const StepAssignment&) = default;
};

/// Weak compositions of `total` into `parts` ordered parts, represented by
/// cut positions 0 = c_0 <= c_1 <= ... <= c_parts = total and visited with
/// (c_1, ..., c_{parts-1}) in increasing lexicographic order.
class CompositionCursor {
public:
    CompositionCursor(std::size_t parts, std::size_t total);

    bool done() const noexcept { return done_; }
    /// parts + 1 cut positions; part i spans [cuts[i], cuts[i+1]).
    std::span<const std::size_t> cuts() const noexcept { return cuts_; }
    void advance();

private:
    std::vector<std::size_t> cuts_;
    std::size_t total_;
    bool done_ = false;
};

/// Lazy stream over every StepAssignment of (x, y), in cut order.
class StepAssignmentStream {
public:
    StepAssignmentStream(Word x, Word y);

    std::optional<StepAssignment> next();

private:
    Word source_;
    Word target_;
    CompositionCursor cursor_;
};

/// Throws ErrorKind::IncompatibleStep if x is empty and y is not.
StepAssignmentStream enumerate_step_assignments(const Word& x, const Word& y);

/// Every production x[i] -> y_i usable in some split of y over x.
ProductionSet candidate_productions(const Word& x, const Word& y);

inline constexpr std::uint64_t kCountCeiling = std::numeric_limits<std::uint64_t>::max();

/// C(|y|+|x|-1, |x|-1), saturating at kCountCeiling. 0 when x is empty and
/// y is not, 1 when both are empty.
std::uint64_t count_step_assignments(const Word& x, const Word& y);

/// Saturating a*b at kCountCeiling.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

}  // namespace lsys
