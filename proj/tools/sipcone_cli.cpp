#include "sipcone/body_io.hpp"
#include "sipcone/errors.hpp"
#include "sipcone/generators.hpp"
#include "sipcone/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace sipcone;

namespace {

struct Overrides {
    std::string config;
    std::string out;
    std::string csv;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<int> samples;
};

void add_run_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "scenario config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "report path (default: stdout)");
    cmd->add_option("--csv", o.csv, "per-sample residual CSV path");
    cmd->add_option("--seed", o.seed, "override the config seed");
    cmd->add_option("--tol", o.tol, "override the tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--samples", o.samples, "override the sample count")->check(CLI::PositiveNumber);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
    out << text;
}

int run_scenario(const Overrides& o, std::optional<ScenarioKind> expected) {
    ScenarioConfig c = load_config(o.config);
    if (expected && c.kind != *expected) {
        throw InvalidArgument(o.config + ": scenario is '" + to_string(c.kind) + "', expected '" +
                              to_string(*expected) + "'");
    }
    if (!expected && !is_exploratory(c.kind)) {
        throw InvalidArgument(o.config + ": '" + to_string(c.kind) + "' is a verification scenario; use verify");
    }
    if (o.seed) c.seed = *o.seed;
    if (o.tol) c.tolerance = *o.tol;
    if (o.samples) c.samples = *o.samples;
    // Re-validate so overrides are held to the per-scenario minimums.
    c = parse_config(config_to_json(c), c.base_dir);

    const RunReport r = run(c);
    const std::string out = !o.out.empty() ? o.out : c.report_path.value_or("");
    const std::string csv = !o.csv.empty() ? o.csv : c.csv_path.value_or("");
    if (out.empty()) {
        std::cout << render_report(r);
    } else {
        emit_report(r, out);
    }
    if (!csv.empty()) write_csv(r, csv);
    std::cerr << to_string(c.kind) << ": verdict " << (r.verdict ? "true" : "false")
              << (is_exploratory(c.kind) ? " (exploratory)" : "") << "\n";
    return exit_code(r);
}

int summarize(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open report '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
    if (!j.is_object() || j.value("schema", "") != kReportSchema) {
        throw InvalidArgument(path + ": not a " + std::string(kReportSchema) + " report");
    }
    const ScenarioKind kind = scenario_from_string(j.at("scenario").get<std::string>());
    std::cout << "scenario   " << to_string(kind) << "\n";
    std::cout << "seed       " << j.at("effective").at("seed") << "\n";
    std::cout << "cases      " << j.at("cases").size() << "\n";
    for (auto it = j.at("aggregate").begin(); it != j.at("aggregate").end(); ++it) {
        std::printf("%-10s %s\n", it.key().c_str(), it.value().dump().c_str());
    }
    const bool verdict = j.at("verdict").get<bool>();
    std::cout << "verdict    " << (verdict ? "true" : "false") << (is_exploratory(kind) ? " (exploratory)" : "") << "\n";
    return verdict || is_exploratory(kind) ? 0 : 1;
}

Json generate(const std::string& kind, int n, std::uint64_t seed, double cap, double exponent, int count,
              double base, double amplitude) {
    if (kind == "random_ellipsoid") return body_to_json(random_ellipsoid(seed, n, cap));
    if (kind == "perturbed_superellipsoid") {
        return body_to_json(*perturbed_superellipsoid(seed, exponent, Vec::Ones(n)));
    }
    if (kind == "random_polytope") return body_to_json(random_polytope(seed, n, count));
    if (kind == "cube") return body_to_json(cube(n));
    if (kind == "cross_polytope") return body_to_json(cross_polytope(n));
    if (kind == "simplex") return body_to_json(regular_simplex(n));
    if (kind == "random_star") return star_to_json(random_star_surface(seed, n, base, amplitude));
    throw InvalidArgument("gen-body: unknown kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sipcone: support cones, the strong intersection property and its controls"};
    app.require_subcommand(1);

    Overrides verify_opts;
    std::string verify_kind;
    auto* verify = app.add_subcommand("verify", "run a verification scenario");
    verify->add_option("kind", verify_kind, "theorem1|theorem2|sip|hammer|kakutani|reflect")
        ->required()
        ->check(CLI::IsMember({"theorem1", "theorem2", "sip", "hammer", "kakutani", "reflect"}));
    add_run_flags(verify, verify_opts);

    Overrides explore_opts;
    auto* explore = app.add_subcommand("explore", "run an exploration scenario (always exits 0 on success)");
    add_run_flags(explore, explore_opts);

    std::string gen_kind = "random_ellipsoid";
    std::string gen_out;
    int gen_dim = 3;
    std::uint64_t gen_seed = 1;
    double gen_cap = 10.0;
    double gen_exponent = 4.0;
    int gen_count = 12;
    double gen_base = 3.0;
    double gen_amplitude = 0.5;
    auto* gen = app.add_subcommand("gen-body", "write an explicit body or star-surface descriptor");
    gen->add_option("--kind", gen_kind,
                    "random_ellipsoid|perturbed_superellipsoid|random_polytope|cube|cross_polytope|simplex|random_star");
    gen->add_option("--dimension", gen_dim)->check(CLI::Range(2, 16));
    gen->add_option("--seed", gen_seed);
    gen->add_option("--cap", gen_cap, "eigenvalue cap for random_ellipsoid")->check(CLI::Range(1.0, 1e12));
    gen->add_option("--exponent", gen_exponent, "superellipsoid exponent")->check(CLI::Range(1.0, 1e3));
    gen->add_option("--count", gen_count, "vertex count for random_polytope")->check(CLI::PositiveNumber);
    gen->add_option("--base", gen_base, "star base radius")->check(CLI::PositiveNumber);
    gen->add_option("--amplitude", gen_amplitude, "star perturbation amplitude")->check(CLI::NonNegativeNumber);
    gen->add_option("--out", gen_out, "output path (default: stdout)");

    std::string report_path;
    auto* report = app.add_subcommand("report", "summarize a report file");
    report->add_option("path", report_path, "report JSON")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*verify) return run_scenario(verify_opts, scenario_from_string(verify_kind));
        if (*explore) return run_scenario(explore_opts, std::nullopt);
        if (*gen) {
            const std::string text =
                generate(gen_kind, gen_dim, gen_seed, gen_cap, gen_exponent, gen_count, gen_base, gen_amplitude).dump(2) +
                "\n";
            if (gen_out.empty()) {
                std::cout << text;
            } else {
                write_file(gen_out, text);
            }
            return 0;
        }
        if (*report) return summarize(report_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
