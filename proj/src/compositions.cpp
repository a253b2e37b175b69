#include "lsys/compositions.hpp"

#include "lsys/error.hpp"

namespace lsys {

namespace {

__extension__ using u128 = unsigned __int128;

void require_compatible(const Word& x, const Word& y) {
    if (x.empty() && !y.empty())
        throw Error(ErrorKind::IncompatibleStep,
                    "the empty word cannot derive the nonempty word " + to_string(y));
}

}  // namespace

CompositionCursor::CompositionCursor(std::size_t parts, std::size_t total)
    : cuts_(parts + 1, 0), total_(total) {
    if (parts == 0) {
        done_ = total != 0;
        return;
    }
    cuts_.back() = total;
}

void CompositionCursor::advance() {
    if (done_) return;
    // Interior cuts are 1..n-1; bump the last one that can still move.
    std::size_t n = cuts_.size() - 1;
    for (std::size_t i = n; i-- > 1;) {
        if (cuts_[i] < total_) {
            ++cuts_[i];
            for (std::size_t k = i + 1; k < n; ++k) cuts_[k] = cuts_[i];
            return;
        }
    }
    done_ = true;
}

StepAssignmentStream::StepAssignmentStream(Word x, Word y)
    : source_(std::move(x)), target_(std::move(y)), cursor_(source_.size(), target_.size()) {
    require_compatible(source_, target_);
}

std::optional<StepAssignment> StepAssignmentStream::next() {
    if (cursor_.done()) return std::nullopt;
    auto cuts = cursor_.cuts();
    StepAssignment a{source_, target_, {}};
    a.parts.reserve(source_.size());
    for (std::size_t i = 0; i < source_.size(); ++i) a.parts.push_back(target_.slice(cuts[i], cuts[i + 1]));
    cursor_.advance();
    return a;
}

StepAssignmentStream enumerate_step_assignments(const Word& x, const Word& y) {
    return StepAssignmentStream(x, y);
}

ProductionSet candidate_productions(const Word& x, const Word& y) {
    require_compatible(x, y);
    ProductionSet out;
    const std::size_t n = x.size();
    const std::size_t len = y.size();
    // Position i can take any factor y[s, e) as long as the first part starts
    // at 0 and the last part ends at |y|; the other parts absorb the rest.
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t s_max = (i == 0) ? 0 : len;
        for (std::size_t s = 0; s <= s_max; ++s) {
            std::size_t e_min = (i + 1 == n) ? len : s;
            for (std::size_t e = e_min; e <= len; ++e) out.insert(Production{x[i], y.slice(s, e)});
        }
    }
    return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    u128 r = static_cast<u128>(a) * b;
    return r > kCountCeiling ? kCountCeiling : static_cast<std::uint64_t>(r);
}

std::uint64_t count_step_assignments(const Word& x, const Word& y) {
    if (x.empty()) return y.empty() ? 1 : 0;
    // C(len + n - 1, n - 1) by the multiplicative formula; every partial
    // product is itself a binomial coefficient, so the division is exact.
    std::uint64_t top = y.size() + x.size() - 1;
    std::uint64_t k = std::min<std::uint64_t>(x.size() - 1, y.size());
    u128 r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r = r * (top - i) / (i + 1);
        if (r > kCountCeiling) return kCountCeiling;
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace lsys
