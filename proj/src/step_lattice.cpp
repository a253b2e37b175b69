#include "lsys/step_lattice.hpp"

#include <algorithm>
#include <cmath>

namespace lsys {

double log_add(double a, double b) {
    if (a == kLogZero) return b;
    if (b == kLogZero) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

VariableIndex::VariableIndex(const ProductionSet& productions)
    : variables_(productions.begin(), productions.end()) {
    for (std::size_t v = 0; v < variables_.size(); ++v) {
        const auto& p = variables_[v];
        by_predecessor_[p.predecessor].emplace(p.successor, v);
        auto& m = max_len_[p.predecessor];
        m = std::max(m, p.successor.size());
        blocks_[p.predecessor].push_back(v);
    }
}

std::optional<std::size_t> VariableIndex::find(const Production& p) const {
    auto it = std::lower_bound(variables_.begin(), variables_.end(), p);
    if (it == variables_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - variables_.begin());
}

const std::map<Word, std::size_t>* VariableIndex::successors(const Symbol& a) const {
    auto it = by_predecessor_.find(a);
    return it == by_predecessor_.end() ? nullptr : &it->second;
}

std::size_t VariableIndex::max_successor_length(const Symbol& a) const {
    auto it = max_len_.find(a);
    return it == max_len_.end() ? 0 : it->second;
}

StepTable::StepTable(const VariableIndex& index, const Word& x, const Word& y) : len_(y.size()) {
    std::map<Symbol, std::size_t> slots;
    slot_.reserve(x.size());
    for (const auto& a : x) {
        auto [it, fresh] = slots.emplace(a, tables_.size());
        slot_.push_back(it->second);
        if (!fresh) continue;

        auto& table = tables_.emplace_back((len_ + 1) * (len_ + 1), npos);
        const auto* succ = index.successors(a);
        if (!succ) continue;
        std::size_t reach = index.max_successor_length(a);
        for (std::size_t s = 0; s <= len_; ++s) {
            for (std::size_t e = s; e <= len_ && e - s <= reach; ++e) {
                auto found = succ->find(y.slice(s, e));
                if (found != succ->end()) table[s * (len_ + 1) + e] = found->second;
            }
        }
    }
}

namespace {

// Row-scaled forward table: rows[i][k] * exp(log_scale[i]) is the total
// weight of deriving y[0, k) from x[0, i).
struct ScaledTable {
    std::vector<std::vector<double>> rows;
    std::vector<double> log_scale;
};

void rescale(std::vector<double>& row, double& log_scale) {
    double m = *std::max_element(row.begin(), row.end());
    if (m > 0.0) {
        for (auto& v : row) v /= m;
        log_scale += std::log(m);
    }
}

ScaledTable forward(const StepTable& t, std::span<const double> w) {
    const std::size_t n = t.source_size();
    const std::size_t len = t.target_size();
    ScaledTable f{std::vector<std::vector<double>>(n + 1, std::vector<double>(len + 1, 0.0)),
                  std::vector<double>(n + 1, 0.0)};
    f.rows[0][0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& prev = f.rows[i];
        auto& next = f.rows[i + 1];
        for (std::size_t s = 0; s <= len; ++s) {
            if (prev[s] == 0.0) continue;
            for (std::size_t e = s; e <= len; ++e) {
                std::size_t v = t.variable(i, s, e);
                if (v != StepTable::npos) next[e] += prev[s] * w[v];
            }
        }
        f.log_scale[i + 1] = f.log_scale[i];
        rescale(next, f.log_scale[i + 1]);
    }
    return f;
}

// rows[i][k] * exp(log_scale[i]) is the weight of deriving y[k, |y|) from x[i, |x|).
ScaledTable backward(const StepTable& t, std::span<const double> w) {
    const std::size_t n = t.source_size();
    const std::size_t len = t.target_size();
    ScaledTable b{std::vector<std::vector<double>>(n + 1, std::vector<double>(len + 1, 0.0)),
                  std::vector<double>(n + 1, 0.0)};
    b.rows[n][len] = 1.0;
    for (std::size_t i = n; i-- > 0;) {
        const auto& after = b.rows[i + 1];
        auto& here = b.rows[i];
        for (std::size_t s = 0; s <= len; ++s) {
            double acc = 0.0;
            for (std::size_t e = s; e <= len; ++e) {
                if (after[e] == 0.0) continue;
                std::size_t v = t.variable(i, s, e);
                if (v != StepTable::npos) acc += w[v] * after[e];
            }
            here[s] = acc;
        }
        b.log_scale[i] = b.log_scale[i + 1];
        rescale(here, b.log_scale[i]);
    }
    return b;
}

double log_of(double mantissa, double log_scale) {
    return mantissa > 0.0 ? std::log(mantissa) + log_scale : kLogZero;
}

double log_step_total(const StepTable& t, std::span<const double> w) {
    if (t.source_size() == 0) return t.target_size() == 0 ? 0.0 : kLogZero;
    auto f = forward(t, w);
    return log_of(f.rows.back()[t.target_size()], f.log_scale.back());
}

}  // namespace

FactoredObjective::FactoredObjective(const ProductionSet& productions, Sequence theta)
    : index_(productions), theta_(std::move(theta)) {
    steps_.reserve(theta_.steps());
    for (std::size_t j = 0; j < theta_.steps(); ++j) steps_.emplace_back(index_, theta_[j], theta_[j + 1]);
}

std::vector<double> FactoredObjective::weights_from(const WeightMap& w) const {
    std::vector<double> out(index_.size(), 0.0);
    for (const auto& [p, v] : w) {
        if (auto id = index_.find(p)) out[*id] = v;
    }
    return out;
}

double FactoredObjective::log_step_value(std::size_t j, std::span<const double> w) const {
    return log_step_total(steps_[j], w);
}

double FactoredObjective::log_value(std::span<const double> w) const {
    double total = 0.0;
    for (const auto& t : steps_) {
        total += log_step_total(t, w);
        if (total == kLogZero) break;
    }
    return total;
}

double FactoredObjective::log_gradient(std::span<const double> w, std::span<double> log_grad) const {
    const std::size_t nvars = index_.size();
    const std::size_t m = steps_.size();
    std::fill(log_grad.begin(), log_grad.end(), kLogZero);

    // Per step: log S_j and log dS_j/dw_v.
    std::vector<double> log_step(m, 0.0);
    std::vector<std::vector<double>> log_dstep(m, std::vector<double>(nvars, kLogZero));
    for (std::size_t j = 0; j < m; ++j) {
        const auto& t = steps_[j];
        const std::size_t n = t.source_size();
        const std::size_t len = t.target_size();
        if (n == 0) {
            log_step[j] = len == 0 ? 0.0 : kLogZero;
            continue;
        }
        auto f = forward(t, w);
        auto b = backward(t, w);
        log_step[j] = log_of(f.rows[n][len], f.log_scale[n]);
        auto& d = log_dstep[j];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t s = 0; s <= len; ++s) {
                double fs = f.rows[i][s];
                if (fs == 0.0) continue;
                for (std::size_t e = s; e <= len; ++e) {
                    double be = b.rows[i + 1][e];
                    if (be == 0.0) continue;
                    std::size_t v = t.variable(i, s, e);
                    if (v == StepTable::npos) continue;
                    d[v] = log_add(d[v], std::log(fs) + std::log(be) + f.log_scale[i] + b.log_scale[i + 1]);
                }
            }
        }
    }

    // Product rule across steps with prefix/suffix sums of log S_j.
    std::vector<double> prefix(m + 1, 0.0), suffix(m + 1, 0.0);
    for (std::size_t j = 0; j < m; ++j) prefix[j + 1] = prefix[j] + log_step[j];
    for (std::size_t j = m; j-- > 0;) suffix[j] = suffix[j + 1] + log_step[j];
    for (std::size_t j = 0; j < m; ++j) {
        double others = prefix[j] + suffix[j + 1];
        if (others == kLogZero) continue;
        for (std::size_t v = 0; v < nvars; ++v) {
            if (log_dstep[j][v] != kLogZero) log_grad[v] = log_add(log_grad[v], log_dstep[j][v] + others);
        }
    }
    return prefix[m];
}

}  // namespace lsys
