#include "lsys/free_system.hpp"

#include "lsys/compositions.hpp"
#include "lsys/error.hpp"

namespace lsys {

void check_compatible_lengths(const Sequence& theta) {
    for (std::size_t j = 0; j < theta.steps(); ++j) {
        if (theta[j].empty() && !theta[j + 1].empty())
            throw IncompatibleSequenceError(j, "step " + std::to_string(j) + " (w_" + std::to_string(j) +
                                                   " => w_" + std::to_string(j + 1) +
                                                   "): the empty word cannot derive " +
                                                   to_string(theta[j + 1]));
    }
}

Partial0LSystem build_free_system(const Sequence& theta) {
    check_compatible_lengths(theta);
    ProductionSet productions;
    for (std::size_t j = 0; j < theta.steps(); ++j) productions.merge(candidate_productions(theta[j], theta[j + 1]));
    return Partial0LSystem(theta.alphabet(), theta[0], std::move(productions));
}

}  // namespace lsys
