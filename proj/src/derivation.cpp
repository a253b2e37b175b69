#include "lsys/derivation.hpp"

#include <cmath>

#include "lsys/error.hpp"

namespace lsys {

Sequence Derivation::trace() const {
    if (steps.empty()) throw Error(ErrorKind::InvalidArgument, "a derivation needs at least one step");
    std::vector<Word> words;
    words.reserve(steps.size() + 1);
    words.push_back(steps.front().source);
    for (const auto& s : steps) words.push_back(s.target);
    return Sequence(std::move(words));
}

ValidSplitCursor::ValidSplitCursor(const StepTable& table)
    : table_(&table),
      reach_(table.source_size() + 1, std::vector<bool>(table.target_size() + 1, false)),
      cuts_(table.source_size() + 1, 0) {
    const std::size_t n = table.source_size();
    const std::size_t len = table.target_size();
    reach_[n][len] = true;
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t s = 0; s <= len; ++s) {
            for (std::size_t e = s; e <= len; ++e) {
                if (reach_[i + 1][e] && allowed(i, s, e)) {
                    reach_[i][s] = true;
                    break;
                }
            }
        }
    }
}

bool ValidSplitCursor::allowed(std::size_t i, std::size_t s, std::size_t e) const {
    return table_->variable(i, s, e) != StepTable::npos;
}

void ValidSplitCursor::fill_from(std::size_t i) {
    const std::size_t n = table_->source_size();
    for (std::size_t k = i; k < n; ++k) {
        std::size_t e = cuts_[k];
        while (!(reach_[k + 1][e] && allowed(k, cuts_[k], e))) ++e;
        cuts_[k + 1] = e;
    }
}

bool ValidSplitCursor::reset() {
    if (!reach_[0][0]) return false;
    cuts_[0] = 0;
    fill_from(0);
    return true;
}

bool ValidSplitCursor::advance() {
    const std::size_t n = table_->source_size();
    const std::size_t len = table_->target_size();
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t e = cuts_[k + 1] + 1; e <= len; ++e) {
            if (reach_[k + 1][e] && allowed(k, cuts_[k], e)) {
                cuts_[k + 1] = e;
                fill_from(k + 1);
                return true;
            }
        }
    }
    return false;
}

std::uint64_t ValidSplitCursor::count() const {
    const std::size_t n = table_->source_size();
    const std::size_t len = table_->target_size();
    std::vector<std::uint64_t> after(len + 1, 0), here(len + 1, 0);
    after[len] = 1;
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t s = 0; s <= len; ++s) {
            std::uint64_t acc = 0;
            for (std::size_t e = s; e <= len; ++e) {
                if (after[e] == 0 || !allowed(i, s, e)) continue;
                acc = (kCountCeiling - acc < after[e]) ? kCountCeiling : acc + after[e];
            }
            here[s] = acc;
        }
        std::swap(after, here);
    }
    return after[0];
}

DerivationStream::DerivationStream(const ProductionSet& productions, Sequence theta, std::uint64_t cap)
    : theta_(std::move(theta)), cap_(cap) {
    VariableIndex index(productions);
    tables_.reserve(theta_.steps());
    for (std::size_t j = 0; j < theta_.steps(); ++j) tables_.emplace_back(index, theta_[j], theta_[j + 1]);
    cursors_.reserve(tables_.size());
    for (const auto& t : tables_) cursors_.emplace_back(t);
    for (std::size_t j = 0; j < cursors_.size(); ++j) {
        if (!cursors_[j].reset())
            throw IncompatibleSequenceError(j, "step " + std::to_string(j) + " (" + to_string(theta_[j]) + " => " +
                                                   to_string(theta_[j + 1]) +
                                                   ") cannot be derived with the available productions");
    }
}

std::uint64_t DerivationStream::total() const {
    std::uint64_t n = 1;
    for (const auto& c : cursors_) n = saturating_mul(n, c.count());
    return n;
}

Derivation DerivationStream::current() const {
    Derivation d;
    d.steps.reserve(cursors_.size());
    for (std::size_t j = 0; j < cursors_.size(); ++j) {
        auto cuts = cursors_[j].cuts();
        const Word& x = theta_[j];
        const Word& y = theta_[j + 1];
        StepAssignment a{x, y, {}};
        a.parts.reserve(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) a.parts.push_back(y.slice(cuts[i], cuts[i + 1]));
        d.steps.push_back(std::move(a));
    }
    return d;
}

std::optional<Derivation> DerivationStream::next() {
    if (done_) return std::nullopt;
    if (produced_ >= cap_)
        throw CapExceededError(produced_, "more than " + std::to_string(cap_) + " derivations");
    Derivation d = current();
    ++produced_;

    std::size_t j = cursors_.size();
    for (;;) {
        if (j == 0) {
            done_ = true;
            break;
        }
        --j;
        if (cursors_[j].advance()) break;
        cursors_[j].reset();
    }
    return d;
}

DerivationStream enumerate_derivations(const Partial0LSystem& system, const Sequence& theta, std::uint64_t cap) {
    return DerivationStream(system.productions(), theta, cap);
}

std::uint64_t count_derivations(const Partial0LSystem& system, const Sequence& theta) {
    VariableIndex index(system.productions());
    std::uint64_t n = 1;
    for (std::size_t j = 0; j < theta.steps(); ++j) {
        StepTable t(index, theta[j], theta[j + 1]);
        n = saturating_mul(n, ValidSplitCursor(t).count());
    }
    return n;
}

ProductionCounts count_productions(const Derivation& d) {
    ProductionCounts counts;
    for (const auto& step : d.steps) {
        for (std::size_t i = 0; i < step.source.size(); ++i) ++counts[step.production(i)];
    }
    return counts;
}

double derivation_probability(const S0LSystem& g, const Derivation& d) {
    double p = 1.0;
    for (const auto& step : d.steps) {
        for (std::size_t i = 0; i < step.source.size(); ++i) p *= g.probability(step.production(i));
    }
    return p;
}

double derivation_log_probability(const S0LSystem& g, const Derivation& d) {
    double lp = 0.0;
    for (const auto& [p, n] : count_productions(d)) {
        double v = g.probability(p);
        if (v <= 0.0) return kLogZero;
        lp += static_cast<double>(n) * std::log(v);
    }
    return lp;
}

double sequence_probability_naive(const S0LSystem& g, const Sequence& theta, std::uint64_t cap) {
    std::optional<DerivationStream> stream;
    try {
        stream.emplace(g.productions(), theta, cap);
    } catch (const IncompatibleSequenceError&) {
        return 0.0;
    }
    double total = 0.0;
    while (auto d = stream->next()) total += derivation_probability(g, *d);
    return total;
}

namespace {

ProductionSet domain_of(const WeightMap& w) {
    ProductionSet out;
    for (const auto& [p, _] : w) out.insert(out.end(), p);
    return out;
}

LogProb make_log_prob(double lp) { return {lp, lp == kLogZero ? 0.0 : std::exp(lp)}; }

}  // namespace

LogProb sequence_probability(const WeightMap& weights, const Sequence& theta) {
    FactoredObjective obj(domain_of(weights), theta);
    return make_log_prob(obj.log_value(obj.weights_from(weights)));
}

LogProb sequence_probability(const S0LSystem& g, const Sequence& theta) {
    return sequence_probability(g.prob(), theta);
}

WeightMap probability_gradient(const WeightMap& weights, const Sequence& theta) {
    FactoredObjective obj(domain_of(weights), theta);
    std::vector<double> log_grad(obj.index().size());
    obj.log_gradient(obj.weights_from(weights), log_grad);
    WeightMap out;
    for (std::size_t v = 0; v < log_grad.size(); ++v)
        out.emplace(obj.index().variable(v), log_grad[v] == kLogZero ? 0.0 : std::exp(log_grad[v]));
    return out;
}

WeightMap probability_gradient(const S0LSystem& g, const Sequence& theta) {
    return probability_gradient(g.prob(), theta);
}

}  // namespace lsys
