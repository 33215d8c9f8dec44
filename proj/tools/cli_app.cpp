#include "cli_app.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "vpent/cover.hpp"
#include "vpent/errors.hpp"
#include "vpent/fractional.hpp"
#include "vpent/graph.hpp"
#include "vpent/graphon.hpp"
#include "vpent/json_io.hpp"
#include "vpent/selftest.hpp"
#include "vpent/solver.hpp"

namespace vpent::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << data;
}

struct OutputSink {
    std::string out_path;  // empty = stdout
    RunManifest manifest;

    void deliver(const std::string& result, std::ostream& stdout_stream) {
        if (out_path.empty()) {
            stdout_stream << result;
            return;
        }
        write_file(out_path, result);
        manifest.outputs.push_back(out_path);
        write_file(out_path + ".manifest.json", manifest_to_json(manifest));
    }
};

struct SolverFlags {
    double tol = 1e-8;
    long max_iters = 200000;
    bool away = false;
    std::uint64_t seed = 0;
    std::string log_base = "nat";

    void attach(CLI::App* cmd) {
        cmd->add_option("--tol", tol, "target duality gap");
        cmd->add_option("--max-iters", max_iters, "iteration budget");
        cmd->add_flag("--away", away, "enable away steps");
        cmd->add_option("--seed", seed, "initialization seed");
        cmd->add_option("--log-base", log_base, "output unit: nat or bit")
            ->check(CLI::IsMember({"nat", "bit"}));
    }

    SolveOptions options() const {
        SolveOptions o;
        o.tol = tol;
        o.max_iters = max_iters;
        o.away_steps = away;
        o.init_seed = seed;
        return o;
    }
};

int emit_certificate(const EntropyCertificate& cert, const SetSystem& system,
                     const SolverFlags& flags, OutputSink& sink, std::ostream& out) {
    sink.manifest.seed = flags.seed;
    sink.manifest.tolerances["solver_gap"] = flags.tol;
    sink.deliver(certificate_to_json(cert, system, flags.log_base == "bit"), out);
    if (!cert.converged && std::isfinite(cert.value)) return 4;
    return 0;
}

int cmd_entropy(const std::string& path, const SolverFlags& flags, OutputSink& sink,
                std::ostream& out) {
    std::string text = read_file(path);
    sink.manifest.input_digest = sha256_hex(canonical_json(text));
    auto system = parse_system(text);
    auto cert = solve_entropy(system, system.universe(), flags.options());
    return emit_certificate(cert, system, flags, sink, out);
}

int cmd_graph_entropy(const std::string& path, const SolverFlags& flags, OutputSink& sink,
                      std::ostream& out) {
    std::string text = read_file(path);
    sink.manifest.input_digest = sha256_hex(canonical_json(text));
    auto graph = parse_graph(text);
    auto system = maximal_independent_sets(graph);
    auto cert = solve_entropy(system, system.universe(), flags.options());
    return emit_certificate(cert, system, flags, sink, out);
}

int cmd_step_graphon(const std::string& path, const SolverFlags& flags, OutputSink& sink,
                     std::ostream& out) {
    std::string text = read_file(path);
    sink.manifest.input_digest = sha256_hex(canonical_json(text));
    auto graphon = parse_step_graphon(text);
    auto system = quotient_system(graphon);
    auto cert = solve_entropy(system, system.universe(), flags.options());
    return emit_certificate(cert, system, flags, sink, out);
}

int cmd_frac(const std::string& path, OutputSink& sink, std::ostream& out) {
    std::string text = read_file(path);
    sink.manifest.input_digest = sha256_hex(canonical_json(text));
    auto system = parse_system(text);
    auto chi = frac_chromatic(system);
    auto omega = frac_clique(system);
    auto pi_star = entropy_maximizing_distribution(system);
    sink.manifest.tolerances["lp_residual"] = 1e-9;
    sink.deliver(frac_to_json(chi, omega, pi_star), out);
    return 0;
}

int cmd_closed_form(const std::string& model, double c, int n, const std::string& pi_path,
                    double m1, double m_inf, const std::string& log_base, OutputSink& sink,
                    std::ostream& out) {
    const double unit = log_base == "bit" ? std::log(2.0) : 1.0;
    std::ostringstream params;
    params << "{\"model\":\"" << model << "\",\"c\":" << format_real(c) << ",\"n\":" << n
           << ",\"m1\":" << format_real(m1) << ",\"m_inf\":" << format_real(m_inf) << "}";
    sink.manifest.input_digest = sha256_hex(canonical_json(params.str()));

    std::ostringstream doc;
    if (model == "circle") {
        doc << "{\"model\":\"circle\",\"value\":" << format_real(circle_graphon_entropy(c) / unit)
            << "}\n";
    } else if (model == "interval") {
        doc << "{\"model\":\"interval\",\"value\":"
            << format_real(interval_graphon_entropy(c) / unit) << "}\n";
    } else if (model == "cycle") {
        std::vector<Atom> atoms;
        if (!pi_path.empty()) {
            std::string text = read_file(pi_path);
            sink.manifest.input_digest = sha256_hex(canonical_json(text));
            auto masses = parse_mass_array(text);  // cyclic order
            for (size_t i = 0; i < masses.size(); ++i)
                atoms.push_back({"x" + std::to_string(i), masses[i]});
        } else {
            for (int i = 0; i < 2 * n + 1; ++i)
                atoms.push_back({"x" + std::to_string(i), 1.0 / (2.0 * n + 1.0)});
            double acc = 0.0;
            for (size_t i = 0; i + 1 < atoms.size(); ++i) acc += atoms[i].mass;
            atoms.back().mass = 1.0 - acc;
        }
        auto value = cycle_entropy(n, Distribution(std::move(atoms)));
        if (value)
            doc << "{\"applicable\":true,\"model\":\"cycle\",\"value\":"
                << format_real(*value / unit) << "}\n";
        else
            doc << "{\"applicable\":false,\"model\":\"cycle\"}\n";
    } else if (model == "indep-events") {
        doc << "{\"model\":\"indep-events\",\"value\":"
            << format_real(independent_events_allbutone(m1, m_inf) / unit) << "}\n";
    } else {
        throw input_error("unknown model '" + model + "'");
    }
    sink.deliver(doc.str(), out);
    return 0;
}

std::vector<int> parse_ell_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw input_error("--ell needs at least one value");
    return out;
}

std::string csv_of_reports(const std::vector<CoverReport>& reports) {
    std::ostringstream csv;
    csv << "ell,boxes,covered_mass,rate\n";
    for (const auto& r : reports)
        csv << r.ell << ',' << format_real(r.boxes_used) << ',' << format_real(r.covered_mass)
            << ',' << format_real(r.rate) << '\n';
    return csv.str();
}

int cmd_simulate_cover(const std::string& system_path, const std::string& ell_list,
                       double lambda, long trials, std::uint64_t seed,
                       const std::string& mixture, OutputSink& sink, std::ostream& out) {
    sink.manifest.seed = seed;
    sink.manifest.tolerances["lambda"] = lambda;
    std::vector<CoverReport> reports;

    if (!mixture.empty()) {
        auto comma = mixture.find(',');
        if (comma == std::string::npos) throw input_error("--mixture expects n,eps");
        CountableFamilySampler sampler;
        sampler.rule = CountableFamilySampler::Rule::half;
        sampler.mixture_n = std::stoi(mixture.substr(0, comma));
        sampler.mixture_epsilon = std::stod(mixture.substr(comma + 1));
        sink.manifest.input_digest = sha256_hex(canonical_json(
            "{\"mixture_n\":" + std::to_string(sampler.mixture_n) +
            ",\"eps\":" + format_real(sampler.mixture_epsilon) + "}"));
        for (int ell : parse_ell_list(ell_list)) {
            RandomCoverOptions opts;
            opts.ell = ell;
            opts.lambda = lambda;
            opts.trials = trials;
            opts.seed = seed;
            reports.push_back(random_cover_rate(sampler, opts));
        }
    } else {
        if (system_path.empty()) throw input_error("need --system or --mixture");
        std::string text = read_file(system_path);
        sink.manifest.input_digest = sha256_hex(canonical_json(text));
        auto system = parse_system(text);
        auto cert = solve_entropy(system, system.universe(), {});
        if (!std::isfinite(cert.value))
            throw input_error("support not coverable; no sampling weights exist");
        std::vector<double> weights(system.family_size(), 0.0);
        for (const auto& [k, q] : cert.point.weights) weights[k] = q;
        for (int ell : parse_ell_list(ell_list)) {
            RandomCoverOptions opts;
            opts.ell = ell;
            opts.lambda = lambda;
            opts.trials = trials;
            opts.seed = seed;
            reports.push_back(random_cover_rate(system, weights, opts));
        }
    }
    sink.deliver(csv_of_reports(reports), out);
    return 0;
}

int cmd_exact_cover(const std::string& system_path, const std::string& ell_list, double lambda,
                    OutputSink& sink, std::ostream& out) {
    std::string text = read_file(system_path);
    sink.manifest.input_digest = sha256_hex(canonical_json(text));
    sink.manifest.tolerances["lambda"] = lambda;
    auto system = parse_system(text);
    std::vector<CoverReport> reports;
    for (int ell : parse_ell_list(ell_list))
        reports.push_back(exact_min_cover(system, ell, lambda));
    sink.deliver(csv_of_reports(reports), out);
    return 0;
}

}  // namespace

std::string manifest_to_json(const RunManifest& m) {
    std::ostringstream doc;
    doc << "{\"input_digest\":\"sha256:" << m.input_digest << "\",\"outputs\":[";
    for (size_t i = 0; i < m.outputs.size(); ++i) {
        if (i) doc << ',';
        doc << '"' << m.outputs[i] << '"';
    }
    doc << "],\"seed\":" << m.seed << ",\"subcommand\":\"" << m.subcommand
        << "\",\"tolerances\":{";
    bool first = true;
    for (const auto& [k, v] : m.tolerances) {
        if (!first) doc << ',';
        first = false;
        doc << '"' << k << "\":" << format_real(v);
    }
    doc << "},\"versions\":{";
    first = true;
    for (const auto& [k, v] : m.versions) {
        if (!first) doc << ',';
        first = false;
        doc << '"' << k << "\":\"" << v << '"';
    }
    doc << "}}\n";
    return doc.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"vertex-packing entropy toolkit"};
    app.require_subcommand(1);

    std::string system_path, graph_path, graphon_path, out_path, pi_path, mixture;
    std::string model = "circle", ell_list = "1";
    SolverFlags flags;
    double c = 0.25, m1 = 0.5, m_inf = 0.5, lambda = 0.5;
    int n = 2;
    long trials = 10000;
    std::uint64_t seed = 0;

    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_path, "result file"); };

    auto* entropy = app.add_subcommand("entropy", "entropy of an explicit set system");
    entropy->add_option("--system", system_path, "system JSON")->required();
    flags.attach(entropy);
    add_out(entropy);

    auto* graph_entropy = app.add_subcommand("graph-entropy", "entropy of a finite graph");
    graph_entropy->add_option("--graph", graph_path, "graph JSON")->required();
    flags.attach(graph_entropy);
    add_out(graph_entropy);

    auto* step = app.add_subcommand("step-graphon", "entropy of a step graphon");
    step->add_option("--graphon", graphon_path, "step graphon JSON")->required();
    flags.attach(step);
    add_out(step);

    auto* frac = app.add_subcommand("frac", "fractional chromatic/clique numbers");
    frac->add_option("--system", system_path, "system JSON")->required();
    add_out(frac);

    auto* closed = app.add_subcommand("closed-form", "closed-form model values");
    closed->add_option("--model", model, "circle|interval|cycle|indep-events")
        ->check(CLI::IsMember({"circle", "interval", "cycle", "indep-events"}));
    closed->add_option("--c", c, "distance threshold");
    closed->add_option("--n", n, "cycle parameter (C_{2n+1})");
    closed->add_option("--pi", pi_path, "JSON array of cyclic masses");
    closed->add_option("--m1", m1, "first event mass");
    closed->add_option("--minf", m_inf, "tail event mass");
    closed->add_option("--log-base", flags.log_base, "nat or bit")
        ->check(CLI::IsMember({"nat", "bit"}));
    add_out(closed);

    auto* sim = app.add_subcommand("simulate-cover", "Monte Carlo covering rates");
    sim->add_option("--system", system_path, "system JSON (weights = solved optimum)");
    sim->add_option("--ell", ell_list, "block lengths, comma separated");
    sim->add_option("--lambda", lambda, "uncovered mass allowance");
    sim->add_option("--trials", trials, "test points");
    sim->add_option("--seed", seed, "PRNG seed");
    sim->add_option("--mixture", mixture, "n,eps for the half-measure countable sampler");
    add_out(sim);

    auto* exact = app.add_subcommand("exact-cover", "exact minimal box covers");
    exact->add_option("--system", system_path, "system JSON")->required();
    exact->add_option("--ell", ell_list, "block lengths, comma separated");
    exact->add_option("--lambda", lambda, "uncovered mass allowance");
    add_out(exact);

    app.add_subcommand("selftest", "run the acceptance criteria");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            std::ostringstream help;
            int rc = app.exit(e, help, help);
            out << help.str();
            return rc;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    OutputSink sink;
    sink.out_path = out_path;
    sink.manifest.subcommand = app.get_subcommands().front()->get_name();
    sink.manifest.seed = seed;
    sink.manifest.versions["vpent"] = kVersion;
    sink.manifest.versions["schema"] = "1";

    try {
        if (entropy->parsed()) return cmd_entropy(system_path, flags, sink, out);
        if (graph_entropy->parsed()) return cmd_graph_entropy(graph_path, flags, sink, out);
        if (step->parsed()) return cmd_step_graphon(graphon_path, flags, sink, out);
        if (frac->parsed()) return cmd_frac(system_path, sink, out);
        if (closed->parsed())
            return cmd_closed_form(model, c, n, pi_path, m1, m_inf, flags.log_base, sink, out);
        if (sim->parsed())
            return cmd_simulate_cover(system_path, ell_list, lambda, trials, seed, mixture, sink,
                                      out);
        if (exact->parsed()) return cmd_exact_cover(system_path, ell_list, lambda, sink, out);
        // selftest
        return run_selftest(out) ? 0 : 1;
    } catch (const size_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace vpent::cli
