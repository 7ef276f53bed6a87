#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"
#include <morrey/constructions.hpp>
#include <morrey/errors.hpp>
#include <morrey/experiments.hpp>
#include <morrey/maximal.hpp>
#include <morrey/norms.hpp>

namespace
{

using namespace morrey;
using io::json;

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_failed = 3;
constexpr int exit_resource = 4;

struct Flags {
    int d = 1;
    double p = 1;
    double q = 2;
    double p1 = 1;
    double p2 = 1.5;
    double q1 = 2;
    double q2 = 3;
    double epsilon = 0.25;
    int K = 8192;
    std::vector<int> N;
    double R = 1;
    std::optional<double> r_lo;
    std::optional<double> r_hi;
    int samples = 64;
    double tol = 1e-10;
    bool audit = false;
    bool weak = false;
    std::uint64_t seed = 0;
    bool quick = false;
    std::string out;
    std::string format = "json";
    std::string profile_path;
    std::string construct;
};

void add_space_flags(CLI::App *cmd, Flags &f)
{
    cmd->add_option("--d", f.d, "Dimension")->check(CLI::Range(1, 170));
    cmd->add_option("--p", f.p, "Integrability exponent p");
    cmd->add_option("--q", f.q, "Morrey exponent q");
}

void add_family_flags(CLI::App *cmd, Flags &f)
{
    cmd->add_option("--p1", f.p1, "Smaller integrability exponent of the witness");
    cmd->add_option("--p2", f.p2, "Larger integrability exponent of the witness");
    cmd->add_option("--epsilon", f.epsilon, "Thin-annulus width exponent");
    cmd->add_option("--K", f.K, "Number of annuli");
    cmd->add_option("--N", f.N, "Probe sizes (number of bumps)");
    cmd->add_option("--R", f.R, "Ball radius");
}

void add_format_flag(CLI::App *cmd, Flags &f)
{
    cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

RadialProfile construct_profile(const std::string &name, const Flags &f)
{
    if (name == "power") {
        return power_function(f.d, f.q);
    }
    if (name == "thm13") {
        return theorem13_function(make_theorem13_spec(f.d, f.p1, f.p2, f.q, f.K));
    }
    if (name == "bounding") {
        return bounding_profile_g(f.d, f.d * (f.p1 + f.p2) / (2 * f.q));
    }
    if (name == "section4") {
        return section4_function(f.d, f.q, f.epsilon, f.K);
    }
    if (name == "probe") {
        return maximal_probe_family(f.N.empty() ? 16 : f.N.front());
    }
    if (name == "ball") {
        return ball_indicator(f.R);
    }
    throw invalid_argument("unknown construction \"" + name + "\"");
}

RadialProfile load_profile(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw invalid_argument("cannot read profile file " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error &e) {
        throw invalid_argument(std::string("profile is not valid JSON: ") + e.what());
    }
    return io::profile_from_json(j);
}

void emit(const json &j, const std::string &out)
{
    const auto text = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot write " + out);
    }
    file << text;
}

int cmd_norm(const Flags &f)
{
    if (f.profile_path.empty() == f.construct.empty()) {
        throw invalid_argument("give exactly one of --profile or --construct");
    }
    const SpaceParams params(f.d, f.p, f.q);
    const auto profile = f.construct.empty() ? load_profile(f.profile_path) : construct_profile(f.construct, f);
    SearchOptions opts;
    opts.golden_rel_width = f.tol;

    const auto strong = centered_norm(params, profile, opts);
    json out{{"d", f.d}, {"p", f.p}, {"q", f.q}, {"norm", io::verdict_to_json(strong)}};
    if (f.weak) {
        out["weak"] = io::verdict_to_json(weak_norm(params, profile, opts));
    }
    if (f.audit) {
        out["audit"] = io::audit_to_json(offcenter_audit(params, profile, 32, 32, f.seed));
    }
    if (f.d == 1 && profile.is_step() && !profile.truncated()) {
        const auto &last = profile.segments();
        if (last.empty() || std::isfinite(last.back().hi) || last.back().coeff == 0) {
            out["exact_1d"] = io::verdict_to_json(exact_norm_1d(params, profile));
        }
    }
    if (f.r_lo || f.r_hi) {
        if (!f.r_lo || !f.r_hi) {
            throw invalid_argument("--r-lo and --r-hi go together");
        }
        const auto fit = growth_exponent_fit(params, profile, *f.r_lo, *f.r_hi, f.samples);
        out["growth_fit"]
            = {{"r_lo", *f.r_lo}, {"r_hi", *f.r_hi}, {"samples", f.samples}, {"slope", fit.slope},
               {"intercept", fit.intercept}, {"max_residual", fit.max_residual}};
    }
    if (f.format == "csv") {
        std::cout << "kind,value,regime,growth,witness_radius,witness_center\n"
                  << to_string(strong.kind) << ',' << io::format_double(strong.value) << ','
                  << to_string(strong.regime) << ',' << io::format_double(strong.growth) << ','
                  << io::format_double(strong.witness.radius) << ',' << io::format_double(strong.witness.center)
                  << '\n';
        return exit_ok;
    }
    emit(out, f.out);
    return exit_ok;
}

int finish_report(const ExperimentReport &rep, const Flags &f)
{
    if (!f.out.empty()) {
        io::write_report_csv(f.out, rep);
        std::ofstream(std::filesystem::path(f.out) / (rep.id + ".json"), std::ios::binary | std::ios::trunc)
            << io::report_to_json(rep).dump(2) << "\n";
    }
    if (f.format == "csv") {
        std::cout << io::checks_csv(rep);
    } else {
        std::cout << io::report_to_json(rep).dump(2) << "\n";
    }
    std::cerr << rep.id << ": " << (rep.passed() ? "PASS" : "FAIL") << " in " << rep.wall_seconds << " s\n";
    return rep.passed() ? exit_ok : exit_failed;
}

int cmd_counterexample(const std::string &which, const Flags &f, const CLI::App &cmd)
{
    if (which == "thm13") {
        Thm13Params pr;
        pr.d = f.d;
        pr.p1 = f.p1;
        pr.p2 = f.p2;
        pr.q = f.q;
        pr.K = f.K;
        pr.samples = f.samples;
        pr.r_lo = f.r_lo.value_or(pr.r_lo);
        pr.r_hi = f.r_hi.value_or(0.5 * f.K);
        return finish_report(run_thm13(pr), f);
    }
    if (which == "thm14") {
        Thm14Params pr;
        pr.d = f.d;
        pr.p = f.p;
        pr.q = f.q;
        pr.seed = f.seed;
        return finish_report(run_thm14(pr), f);
    }
    Thm41Params pr;
    pr.d = f.d;
    pr.p1 = f.p1;
    pr.q1 = f.q1;
    // The witness exponent p2 defaults to p1 here: equal integrability keeps
    // epsilon's admissible range widest.
    pr.p2 = cmd.count("--p2") ? f.p2 : f.p1;
    pr.q2 = f.q2;
    pr.epsilon = f.epsilon;
    pr.K_max = cmd.count("--K") ? f.K : pr.K_max;
    pr.r_lo = f.r_lo.value_or(pr.r_lo);
    pr.r_hi = f.r_hi.value_or(pr.r_hi);
    pr.samples = f.samples;
    return finish_report(run_thm41(pr), f);
}

int cmd_report(const Flags &f)
{
    const std::filesystem::path dir = f.out.empty() ? "report" : f.out;
    std::filesystem::create_directories(dir);
    SuiteOptions opts;
    opts.seed = f.seed;
    opts.quick = f.quick;

    json experiments = json::array();
    bool all = true;
    const auto start = std::chrono::steady_clock::now();
    for (int i = 1; i <= criterion_count; ++i) {
        const auto rep = run_criterion(i, opts);
        io::write_report_csv(dir, rep);
        experiments.push_back(io::report_to_json(rep));
        all = all && rep.passed();
        std::cout << "criterion " << i << " " << rep.id << ": " << (rep.passed() ? "PASS" : "FAIL") << "\n";
        for (const auto &c : rep.checks) {
            if (!c.pass) {
                std::cout << "  failed: " << c.name << " = " << io::format_double(c.value) << " (expected "
                          << c.kind << " " << io::format_double(c.expected) << ", tolerance "
                          << io::format_double(c.tolerance) << ")\n";
            }
        }
        std::cerr << rep.id << " took " << rep.wall_seconds << " s\n";
    }
    const json summary{{"tool", "morrey"},
                       {"tool_version", tool_version},
                       {"seed", f.seed},
                       {"quick", f.quick},
                       {"experiments", std::move(experiments)},
                       {"all_pass", all}};
    std::ofstream(dir / "summary.json", std::ios::binary | std::ios::trunc) << summary.dump(2) << "\n";
    std::cerr << "total " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
              << " s\n";
    std::cout << (all ? "all criteria PASS" : "some criteria FAIL") << "\n";
    return all ? exit_ok : exit_failed;
}

int cmd_construct(const Flags &f)
{
    emit(io::profile_to_json(construct_profile(f.construct, f)), f.out);
    return exit_ok;
}

int cmd_maximal_probe(const Flags &f)
{
    if (!(f.q > 1)) {
        throw invalid_argument("maximal probe needs q > 1");
    }
    std::vector<int> sizes = f.N;
    if (sizes.empty()) {
        for (int n = 16; n <= 4096; n *= 2) {
            sizes.push_back(n);
        }
    }
    std::vector<MaximalProbeResult> rows;
    for (const int n : sizes) {
        rows.push_back(maximal_morrey_lower_bound(f.q, n));
    }
    if (f.format == "json") {
        json arr = json::array();
        for (const auto &r : rows) {
            arr.push_back({{"N", r.N},
                           {"q", r.q},
                           {"norm_f", r.norm_f},
                           {"lower_bound_norm_Mf", r.lower_bound_norm_Mf},
                           {"ratio", r.ratio},
                           {"minorant_cells", r.minorant_cells}});
        }
        emit(arr, f.out);
        return exit_ok;
    }
    std::ostringstream os;
    os << "N,norm_f,lower_bound_norm_Mf,ratio\n";
    for (const auto &r : rows) {
        os << r.N << ',' << io::format_double(r.norm_f) << ',' << io::format_double(r.lower_bound_norm_Mf) << ','
           << io::format_double(r.ratio) << '\n';
    }
    if (f.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream(f.out, std::ios::binary | std::ios::trunc) << os.str();
    }
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Morrey norms, weak Morrey quasi-norms and maximal-function probes for radial functions"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);
    Flags f;

    auto *norm = app.add_subcommand("norm", "Centered Morrey norm of a profile, optionally weak and audited");
    add_space_flags(norm, f);
    add_family_flags(norm, f);
    add_format_flag(norm, f);
    auto *src = norm->add_option_group("source");
    src->add_option("--profile", f.profile_path, "Profile JSON file");
    src->add_option("--construct", f.construct, "Named construction")
        ->check(CLI::IsMember({"power", "thm13", "bounding", "section4", "probe", "ball"}));
    src->require_option(1);
    norm->add_flag("--audit", f.audit, "Run the off-center audit");
    norm->add_flag("--weak", f.weak, "Also compute the weak quasi-norm");
    norm->add_option("--seed", f.seed, "Audit sampling seed");
    norm->add_option("--r-lo", f.r_lo, "Growth fit lower radius");
    norm->add_option("--r-hi", f.r_hi, "Growth fit upper radius");
    norm->add_option("--samples", f.samples, "Growth fit samples")->check(CLI::PositiveNumber);
    norm->add_option("--tol", f.tol, "Golden-section relative width")->check(CLI::PositiveNumber);
    norm->add_option("--out", f.out, "Write JSON here instead of standard output");

    auto *counter = app.add_subcommand("counterexample", "Verify one of the inclusion theorems numerically");
    std::string which;
    counter->add_option("theorem", which, "thm13 | thm14 | thm41")
        ->required()
        ->check(CLI::IsMember({"thm13", "thm14", "thm41"}));
    add_space_flags(counter, f);
    add_family_flags(counter, f);
    add_format_flag(counter, f);
    counter->add_option("--q1", f.q1, "First Morrey exponent");
    counter->add_option("--q2", f.q2, "Second Morrey exponent");
    counter->add_option("--r-lo", f.r_lo, "Lower radius of the sweep or fit");
    counter->add_option("--r-hi", f.r_hi, "Upper radius of the sweep or fit");
    counter->add_option("--samples", f.samples, "Samples in sweeps and fits")->check(CLI::PositiveNumber);
    counter->add_option("--seed", f.seed, "Seed for randomized checks");
    counter->add_option("--out", f.out, "Directory for CSV and JSON output");

    auto *report = app.add_subcommand("report", "Run the full acceptance suite and write CSV tables and summary.json");
    report->add_option("--seed", f.seed, "Seed for randomized checks");
    report->add_flag("--quick", f.quick, "Reduced grids");
    report->add_option("--out", f.out, "Output directory (default: report)");

    auto *construct = app.add_subcommand("construct", "Emit the profile JSON of a named construction");
    construct->add_option("name", f.construct, "power | thm13 | bounding | section4 | probe | ball")
        ->required()
        ->check(CLI::IsMember({"power", "thm13", "bounding", "section4", "probe", "ball"}));
    add_space_flags(construct, f);
    add_family_flags(construct, f);
    construct->add_option("--out", f.out, "Write JSON here instead of standard output");

    auto *probe = app.add_subcommand("maximal-probe", "Certified lower bounds for the maximal function norm");
    probe->add_option("--q", f.q, "Morrey exponent q > 1");
    probe->add_option("--N", f.N, "Probe sizes (default 16, 32, ..., 4096)");
    probe->add_option("--out", f.out, "Write output here instead of standard output");
    f.format = "csv";
    add_format_flag(probe, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_invalid;
    }
    // The probe sets its own default; every other command defaults to JSON.
    if (!probe->parsed() && !norm->count("--format") && !counter->count("--format")) {
        f.format = "json";
    }

    try {
        if (norm->parsed()) {
            return cmd_norm(f);
        }
        if (counter->parsed()) {
            return cmd_counterexample(which, f, *counter);
        }
        if (report->parsed()) {
            return cmd_report(f);
        }
        if (construct->parsed()) {
            return cmd_construct(f);
        }
        return cmd_maximal_probe(f);
    } catch (const morrey::resource_guard_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_resource;
    } catch (const morrey::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
