#include "lsys/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "lsys/derivation.hpp"
#include "lsys/error.hpp"
#include "lsys/free_system.hpp"
#include "lsys/io.hpp"
#include "lsys/optimal_derivation.hpp"
#include "lsys/optimal_system.hpp"
#include "lsys/sampler.hpp"
#include "lsys/text.hpp"

namespace lsys {

std::string RunReport::render(const std::string& prefix) const {
    std::string out = prefix + "command: " + command + "\n";
    for (const auto& in : inputs) out += prefix + "input: " + in.role + " " + in.path + " fnv1a64=" + in.digest + "\n";
    for (const auto& [k, v] : outcome) out += prefix + k + " = " + v + "\n";
    out += body;
    return out;
}

namespace {

struct Options {
    bool tokens = false;
    std::string sequence_path;
    std::string system_path;
    std::string output_path;
    std::uint64_t max_derivations = kDefaultDerivationCap;
    SolverConfig solver;
    bool show_objective = false;
    std::size_t steps = 1;
    std::uint64_t seed = 0;
};

Tokenization mode_of(const Options& o) { return o.tokens ? Tokenization::Tokens : Tokenization::Chars; }

struct Loaded {
    std::string text;
    RunReport::Input input;
};

Loaded load(const std::string& role, const std::string& path) {
    auto text = read_file(path);
    auto digest = fnv1a64_hex(text);
    return {std::move(text), {role, path, std::move(digest)}};
}

void write_output(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + path);
    f << text;
    if (!f) throw Error(ErrorKind::Io, "cannot write " + path);
}

std::string step_line(const StepAssignment& a, std::size_t j, Tokenization mode) {
    std::string out = "  step " + std::to_string(j) + ":";
    if (a.source.empty()) return out + " (empty)\n";
    for (std::size_t i = 0; i < a.source.size(); ++i) out += (i ? " | " : " ") + format_production(a.production(i), mode);
    return out + "\n";
}

std::string derivation_block(const Derivation& d, Tokenization mode) {
    std::string out;
    for (std::size_t j = 0; j < d.steps.size(); ++j) out += step_line(d.steps[j], j, mode);
    return out;
}

std::string counts_line(const ProductionCounts& counts, Tokenization mode) {
    std::string out = "  counts:";
    bool first = true;
    for (const auto& [p, c] : counts) {
        out += (first ? " " : ", ") + format_production(p, mode) + " x" + std::to_string(c);
        first = false;
    }
    return out + "\n";
}

std::string monomial_line(const Monomial& m, const std::vector<Production>& vars, Tokenization mode) {
    std::string out = "  " + std::to_string(m.coefficient);
    for (const auto& [v, e] : m.exponents) {
        out += " * X[" + format_production(vars[v], mode) + "]";
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out + "\n";
}

RunReport cmd_free(const Options& o) {
    auto seq = load("sequence", o.sequence_path);
    auto theta = parse_sequence(seq.text, mode_of(o));
    auto g = build_free_system(theta);
    RunReport r{"free", {seq.input}, {}, {}, 0.0};
    r.outcome.emplace_back("productions", std::to_string(g.productions().size()));
    r.outcome.emplace_back("derivations", std::to_string(count_derivations(g, theta)));
    r.body = serialize_free_system(g, mode_of(o));
    return r;
}

RunReport cmd_enumerate(const Options& o) {
    const auto mode = mode_of(o);
    auto seq = load("sequence", o.sequence_path);
    auto theta = parse_sequence(seq.text, mode);
    RunReport r{"enumerate", {seq.input}, {}, {}, 0.0};

    std::optional<S0LSystem> g;
    std::optional<Partial0LSystem> base;
    if (!o.system_path.empty()) {
        auto sys = load("system", o.system_path);
        r.inputs.push_back(sys.input);
        g = parse_system(sys.text, mode);
        base = g->base();
    } else {
        base = build_free_system(theta);
    }

    auto stream = enumerate_derivations(*base, theta, o.max_derivations);
    auto total = stream.total();
    if (total > o.max_derivations)
        throw CapExceededError(0, std::to_string(total) + " derivations exceed --max-derivations " +
                                      std::to_string(o.max_derivations));
    r.outcome.emplace_back("derivations", std::to_string(total));

    double sum = 0.0;
    std::size_t n = 0;
    while (auto d = stream.next()) {
        r.body += "derivation " + std::to_string(++n) + "\n";
        r.body += derivation_block(*d, mode);
        r.body += counts_line(count_productions(*d), mode);
        if (g) {
            double p = derivation_probability(*g, *d);
            sum += p;
            r.body += "  p(d) = " + format_number(p) + "\n";
            r.body += "  log p(d) = " + format_number(derivation_log_probability(*g, *d)) + "\n";
        }
    }
    if (g) {
        r.outcome.emplace_back("p(theta)", format_number(sum));
        r.outcome.emplace_back("log p(theta)", format_number(sum > 0.0 ? std::log(sum) : kLogZero));
    }
    return r;
}

RunReport cmd_prob(const Options& o) {
    const auto mode = mode_of(o);
    auto seq = load("sequence", o.sequence_path);
    auto sys = load("system", o.system_path);
    auto theta = parse_sequence(seq.text, mode);
    auto g = parse_system(sys.text, mode);
    auto lp = sequence_probability(g, theta);
    RunReport r{"prob", {seq.input, sys.input}, {}, {}, 0.0};
    r.outcome.emplace_back("p(theta)", format_number(lp.value));
    r.outcome.emplace_back("log p(theta)", format_number(lp.log_value));
    return r;
}

RunReport cmd_infer_derivation(const Options& o) {
    const auto mode = mode_of(o);
    auto seq = load("sequence", o.sequence_path);
    auto theta = parse_sequence(seq.text, mode);
    auto best = best_derivation(theta, o.max_derivations);
    RunReport r{"infer-derivation", {seq.input}, {}, {}, 0.0};
    r.outcome.emplace_back("value", format_number(best.value));
    r.outcome.emplace_back("log value", format_number(best.log_value));
    r.outcome.emplace_back("derivations searched", std::to_string(best.derivations_seen));
    r.outcome.emplace_back("distinct count vectors", std::to_string(best.distinct_counts));
    auto system_text = serialize_system(best.system, mode);
    r.body = "derivation:\n" + derivation_block(best.derivation, mode) + counts_line(count_productions(best.derivation), mode) +
             "system:\n" + system_text;
    if (!o.output_path.empty()) write_output(o.output_path, system_text);
    return r;
}

RunReport cmd_infer_system(const Options& o) {
    const auto mode = mode_of(o);
    auto seq = load("sequence", o.sequence_path);
    auto theta = parse_sequence(seq.text, mode);
    auto inferred = infer_optimal_system(theta, o.solver);
    const auto& s = inferred.solver;

    RunReport r{"infer-system", {seq.input}, {}, {}, 0.0};
    r.outcome.emplace_back("value", format_number(inferred.value));
    r.outcome.emplace_back("log value", format_number(inferred.log_value));
    r.outcome.emplace_back("solver value", format_number(inferred.solver_value));
    r.outcome.emplace_back("seed", std::to_string(o.solver.seed));
    r.outcome.emplace_back("restarts", std::to_string(s.trace.size()));
    if (!s.trace.empty()) {
        std::size_t converged = 0, degenerate = 0;
        double decrease = 0.0, residual = 0.0;
        for (const auto& t : s.trace) {
            converged += t.converged;
            degenerate += t.degenerate_blocks.size();
            decrease = std::max(decrease, t.max_decrease);
            residual = std::max(residual, t.max_feasibility_residual);
        }
        r.outcome.emplace_back("best restart", std::to_string(s.best_restart));
        r.outcome.emplace_back("best restart iterations", std::to_string(s.trace[s.best_restart].iterations));
        r.outcome.emplace_back("converged restarts", std::to_string(converged));
        r.outcome.emplace_back("max objective decrease", format_number(decrease));
        r.outcome.emplace_back("max feasibility residual", format_number(residual));
        r.outcome.emplace_back("degenerate block updates", std::to_string(degenerate));
    }
    auto system_text = serialize_system(inferred.system, mode);
    r.body = "system:\n" + system_text;

    if (o.show_objective) {
        auto obj = build_objective(theta, o.max_derivations);
        if (obj.monomials()) {
            r.body += "objective: " + std::to_string(obj.monomials()->size()) + " monomials\n";
            for (const auto& m : *obj.monomials()) r.body += monomial_line(m, obj.variables(), mode);
        } else {
            r.body += "objective: not expanded, more than " + std::to_string(o.max_derivations) + " derivations\n";
        }
    }
    if (!o.output_path.empty()) write_output(o.output_path, system_text);
    return r;
}

RunReport cmd_sample(const Options& o) {
    const auto mode = mode_of(o);
    auto sys = load("system", o.system_path);
    auto g = parse_system(sys.text, mode);
    auto rec = sample_sequence(g, o.steps, o.seed);
    RunReport r{"sample", {sys.input}, {}, {}, 0.0};
    r.outcome.emplace_back("steps", std::to_string(o.steps));
    r.outcome.emplace_back("seed", std::to_string(o.seed));
    r.outcome.emplace_back("p(d)", format_number(rec.probability));
    r.outcome.emplace_back("log p(d)", format_number(derivation_log_probability(g, rec.derivation)));
    r.body = serialize_sequence(rec.sequence, mode);
    return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Inference of stochastic context-free L-systems from a sequence of words", "lsys"};
    app.require_subcommand(1);
    Options o;

    auto add_sequence = [&](CLI::App* sub) {
        sub->add_option("sequence", o.sequence_path, "Sequence file, one word per line")->required();
    };
    auto add_tokens = [&](CLI::App* sub) {
        sub->add_flag("--tokens", o.tokens, "Whitespace-separated multi-character symbols");
    };
    auto add_cap = [&](CLI::App* sub) {
        sub->add_option("--max-derivations", o.max_derivations, "Cap on enumerated derivations")
            ->check(CLI::PositiveNumber);
    };

    auto* free = app.add_subcommand("free", "Print the free partial 0L-system of the sequence");
    add_sequence(free);
    add_tokens(free);

    auto* enumerate = app.add_subcommand("enumerate", "List derivations with production counts");
    add_sequence(enumerate);
    add_tokens(enumerate);
    add_cap(enumerate);
    enumerate->add_option("--system", o.system_path, "Score derivations under this system");

    auto* prob = app.add_subcommand("prob", "p(theta) under a stochastic system");
    add_sequence(prob);
    add_tokens(prob);
    prob->add_option("--system", o.system_path, "System file")->required();

    auto* infer_d = app.add_subcommand("infer-derivation", "Most probable single derivation and its system");
    add_sequence(infer_d);
    add_tokens(infer_d);
    add_cap(infer_d);
    infer_d->add_option("-o,--output", o.output_path, "Also write the system to this file");

    auto* infer_s = app.add_subcommand("infer-system", "System maximizing p(theta) over all derivations");
    add_sequence(infer_s);
    add_tokens(infer_s);
    add_cap(infer_s);
    infer_s->add_option("--restarts", o.solver.restarts, "Solver starting points")->check(CLI::PositiveNumber);
    infer_s->add_option("--tol", o.solver.rel_tol, "Relative objective change for convergence");
    infer_s->add_option("--max-iters", o.solver.max_iters, "Iterations per restart")->check(CLI::PositiveNumber);
    infer_s->add_option("--seed", o.solver.seed, "Seed for random restarts");
    infer_s->add_option("--prune-eps", o.solver.prune_eps, "Drop productions below this weight");
    infer_s->add_flag("--show-objective", o.show_objective, "Print the expanded polynomial objective");
    infer_s->add_option("-o,--output", o.output_path, "Also write the system to this file");

    auto* sample = app.add_subcommand("sample", "Sample a trace from a stochastic system");
    add_tokens(sample);
    sample->add_option("--system", o.system_path, "System file")->required();
    sample->add_option("--steps", o.steps, "Number of derivation steps")->required()->check(CLI::PositiveNumber);
    sample->add_option("--seed", o.seed, "Random seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: usage: " << e.what() << "\n";
        return 1;
    }

    auto start = std::chrono::steady_clock::now();
    try {
        RunReport report;
        std::string prefix;
        if (free->parsed()) report = cmd_free(o);
        else if (enumerate->parsed()) report = cmd_enumerate(o);
        else if (prob->parsed()) report = cmd_prob(o);
        else if (infer_d->parsed()) report = cmd_infer_derivation(o);
        else if (infer_s->parsed()) report = cmd_infer_system(o);
        else {
            report = cmd_sample(o);
            prefix = "# ";
        }
        report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out << report.render(prefix);
        err << "wall-ms: " << format_number(report.wall_ms) << "\n";
        return 0;
    } catch (const Error& e) {
        err << "error: " << error_tag(e.kind()) << ": " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace lsys
