#pragma once

#include "lsys/model.hpp"

namespace lsys {

/// Throws IncompatibleSequenceError at the first step where an empty word
/// would have to derive a nonempty one.
void check_compatible_lengths(const Sequence& theta);

/// The free partial 0L-system of theta: axiom w_0, alphabet every symbol of
/// theta, and every production usable in some split of some step. Letters
/// that occur only in the last word get no production.
Partial0LSystem build_free_system(const Sequence& theta);

}  // namespace lsys
