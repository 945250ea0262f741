// Command-line surface over the statgeo library: classification of flat
// invariant connections, verification suites, sectional curvature queries,
// coefficient orbits, divergence tables and geodesic integration.
//
// Exit codes: 0 success, 1 failed check / left manifold, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "statgeo/statgeo.hpp"

namespace {

using statgeo::Json;

struct CommonOpts {
    std::uint64_t seed = 42;
    double tol = 1e-8;
    int samples = 20;
    double r = 0.5;
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "random seed (default 42)");
    cmd->add_option("--tol", c.tol, "residual tolerance (default 1e-8)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--samples", c.samples, "sample count (default 20)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--r", c.r, "metric scale (default 0.5, the Fisher metric)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", c.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", c.out, "write the report to this path instead of stdout");
}

int emit(const CommonOpts& c, const Json& report, const std::string& csv = "") {
    std::string text = (c.format == "csv" && !csv.empty()) ? csv : report.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out);
        if (!f) {
            std::cerr << "error: cannot open output file " << c.out << "\n";
            return 2;
        }
        f << text;
    }
    return 0;
}

std::pair<int, int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        int n = std::stoi(text);
        return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

Json check_to_json(const statgeo::CheckResult& c) {
    return Json{{"name", c.name},
                {"measured", c.measured},
                {"threshold", c.threshold},
                {"comparison", c.greater_is_pass ? "gt" : "le"},
                {"pass", c.pass}};
}

int run_classify(int n, const CommonOpts& c) {
    Json report{{"schema", 1}, {"command", "classify"}, {"n", n}};
    auto fs = statgeo::solve_flat(n);
    auto m = statgeo::df_moduli(n);
    if (fs.kind == statgeo::FlatSolutionSet::Kind::continuum) {
        report["kind"] = "continuum";
        report["family"] = "alpha*C1 for every real alpha";
        report["solutions"] = Json::array();
        report["orbits"] = Json::array();
        report["moduli"] = m.moduli;
        return emit(c, report);
    }
    report["kind"] = "finite";
    Json sols = Json::array(), residuals = Json::array();
    double worst = 0.0;
    for (const auto& sol : fs.solutions) {
        sols.push_back(statgeo::to_json(sol));
        statgeo::StatConn conn(statgeo::MetricParam(c.r), statgeo::InvCubic(sol));
        double res = statgeo::flatness_residual(conn, n, c.samples, c.seed);
        residuals.push_back(res);
        worst = std::max(worst, res);
    }
    report["solutions"] = std::move(sols);
    report["residuals"] = std::move(residuals);
    report["max_residual"] = worst;
    report["tol"] = c.tol;
    Json orbits = Json::array();
    for (const auto& members : m.orbits) orbits.push_back(members);
    report["orbits"] = std::move(orbits);
    report["moduli"] = m.moduli;
    report["pass"] = worst <= c.tol;
    int rc = emit(c, report);
    if (rc != 0) return rc;
    return worst <= c.tol ? 0 : 1;
}

int run_verify(const std::string& suite, const std::string& range, const CommonOpts& c) {
    auto [n_from, n_to] = parse_range(range);
    if (n_from < 1 || n_to < n_from) throw CLI::ValidationError("--n", "invalid range");
    statgeo::VerifyOptions opt;
    opt.n_from = n_from;
    opt.n_to = n_to;
    opt.seed = c.seed;
    opt.tol = c.tol;
    opt.samples = c.samples;
    auto checks = statgeo::verify_suite(suite, opt);
    bool all_pass = true;
    Json jchecks = Json::array();
    for (const auto& ck : checks) {
        all_pass = all_pass && ck.pass;
        jchecks.push_back(check_to_json(ck));
    }
    Json report{{"schema", 1},      {"command", "verify"}, {"suite", suite},
                {"n_from", n_from}, {"n_to", n_to},        {"seed", c.seed},
                {"tol", c.tol},     {"samples", c.samples}, {"pass", all_pass},
                {"checks", std::move(jchecks)}};
    int rc = emit(c, report);
    if (rc != 0) return rc;
    return all_pass ? 0 : 1;
}

int run_sectional(int n, const std::string& coeffs, const std::string& plane,
                  const CommonOpts& c) {
    statgeo::RationalCubic rc = statgeo::parse_coeffs(n, coeffs);
    auto comma = plane.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--plane", "expected two indices i,j");
    int i = std::stoi(plane.substr(0, comma));
    int j = std::stoi(plane.substr(comma + 1));
    statgeo::InvCubic cd(rc);
    double value = statgeo::sectional_basis(cd, i, j);
    Json report{{"schema", 1}, {"command", "sectional"}, {"n", n},
                {"coeffs", statgeo::to_json(rc)}, {"plane", Json::array({i, j})},
                {"value", value}};
    return emit(c, report);
}

int run_orbit(int n, const std::string& coeffs, const std::string& group, const CommonOpts& c) {
    statgeo::RationalCubic rc = statgeo::parse_coeffs(n, coeffs);
    statgeo::CoeffGroup g = group == "eta1eta2" ? statgeo::CoeffGroup::eta1_eta2
                                                : statgeo::CoeffGroup::eta1_only;
    auto orb = statgeo::orbit(n, rc, g);
    Json jorb = Json::array();
    for (const auto& o : orb) jorb.push_back(statgeo::to_json(o));
    Json report{{"schema", 1}, {"command", "orbit"}, {"n", n}, {"group", group},
                {"coeffs", statgeo::to_json(rc)}, {"size", orb.size()},
                {"orbit", std::move(jorb)}};
    return emit(c, report);
}

int run_divergence(const std::string& in_path, const CommonOpts& c) {
    Json input;
    if (in_path.empty() || in_path == "-") {
        std::cin >> input;
    } else {
        std::ifstream f(in_path);
        if (!f) {
            std::cerr << "error: cannot open " << in_path << "\n";
            return 2;
        }
        f >> input;
    }
    if (!input.is_array()) throw statgeo::ParseError("divergence: expected a JSON array of pairs");
    Json pairs = Json::array();
    std::ostringstream csv;
    csv << "kl,dprime\n";
    for (const auto& item : input) {
        statgeo::Spd s1 = statgeo::spd_from_json(item.at("sigma1"));
        statgeo::Spd s2 = statgeo::spd_from_json(item.at("sigma2"));
        double k = statgeo::kl(s1, s2);
        double d = statgeo::dprime(s1, s2);
        pairs.push_back(Json{{"kl", k}, {"dprime", d}});
        csv << Json(k).dump() << "," << Json(d).dump() << "\n";
    }
    Json report{{"schema", 1}, {"command", "divergence"}, {"pairs", std::move(pairs)}};
    return emit(c, report, csv.str());
}

int run_geodesic(int n, const std::string& coeffs, double t_final, int steps,
                 const std::string& in_path, const CommonOpts& c) {
    statgeo::RationalCubic rc = statgeo::parse_coeffs(n, coeffs);
    statgeo::StatConn conn(statgeo::MetricParam(c.r), statgeo::InvCubic(rc));
    std::optional<statgeo::Spd> sigma0;
    std::optional<statgeo::SymTan> x0;
    if (!in_path.empty()) {
        std::ifstream f(in_path);
        if (!f) {
            std::cerr << "error: cannot open " << in_path << "\n";
            return 2;
        }
        Json start;
        f >> start;
        sigma0 = statgeo::spd_from_json(start.at("sigma0"));
        x0 = statgeo::sym_from_json(start.at("x0"));
    } else {
        sigma0 = statgeo::random_spd_unit(n, c.seed);
        x0 = statgeo::SymTan(n, 0.3 / n * statgeo::random_sym(n, c.seed + 1).mat());
    }
    auto path = statgeo::geodesic(conn, *sigma0, *x0, t_final, steps);
    Json points = Json::array(), times = Json::array();
    for (std::size_t k = 0; k < path.size(); ++k) {
        times.push_back(t_final * static_cast<double>(k) / steps);
        points.push_back(statgeo::to_json(path[k]));
    }
    Json report{{"schema", 1}, {"command", "geodesic"}, {"n", n},
                {"coeffs", statgeo::to_json(rc)}, {"r", c.r}, {"T", t_final},
                {"steps", steps}, {"t", std::move(times)}, {"points", std::move(points)}};
    return emit(c, report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariant statistical geometry on the SPD cone"};
    app.require_subcommand(1);

    CommonOpts copts;

    auto* classify = app.add_subcommand("classify", "exact dually-flat classification");
    int classify_n = 0;
    classify->add_option("--n", classify_n, "dimension")->required()->check(CLI::PositiveNumber);
    add_common(classify, copts);

    auto* verify = app.add_subcommand("verify", "run an invariant check suite");
    std::string suite, range = "2..4";
    verify->add_option("--suite", suite, "metric|connection|isometry|divergence|all")
        ->required()
        ->check(CLI::IsMember({"metric", "connection", "isometry", "divergence", "all"}));
    verify->add_option("--n", range, "dimension or range like 2..4");
    add_common(verify, copts);

    auto* sectional = app.add_subcommand("sectional", "sectional curvature on a basis plane");
    int sect_n = 0;
    std::string sect_coeffs, sect_plane;
    sectional->add_option("--n", sect_n, "dimension")->required()->check(CLI::PositiveNumber);
    sectional->add_option("--coeffs", sect_coeffs, "cubic coefficients a1,a2,a3")->required();
    sectional->add_option("--plane", sect_plane, "orthonormal-basis indices i,j")->required();
    add_common(sectional, copts);

    auto* orbit = app.add_subcommand("orbit", "coefficient orbit under the eta group");
    int orbit_n = 0;
    std::string orbit_coeffs, orbit_group = "eta1eta2";
    orbit->add_option("--n", orbit_n, "dimension")->required()->check(CLI::PositiveNumber);
    orbit->add_option("--coeffs", orbit_coeffs, "cubic coefficients a1,a2,a3")->required();
    orbit->add_option("--group", orbit_group, "eta1 or eta1eta2")
        ->check(CLI::IsMember({"eta1", "eta1eta2"}));
    add_common(orbit, copts);

    auto* divergence = app.add_subcommand("divergence", "KL and D' for a list of pairs");
    std::string div_in;
    divergence->add_option("--in", div_in, "JSON input file (default: stdin)");
    add_common(divergence, copts);

    auto* geodesic = app.add_subcommand("geodesic", "integrate a connection geodesic");
    int geo_n = 2, geo_steps = 1000;
    double geo_t = 1.0;
    std::string geo_coeffs = "0,0,0", geo_in;
    geodesic->add_option("--n", geo_n, "dimension")->check(CLI::PositiveNumber);
    geodesic->add_option("--coeffs", geo_coeffs, "cubic coefficients a1,a2,a3");
    geodesic->add_option("--T", geo_t, "final time (default 1)");
    geodesic->add_option("--steps", geo_steps, "RK4 step count (default 1000)")
        ->check(CLI::PositiveNumber);
    geodesic->add_option("--in", geo_in, "start point JSON {\"sigma0\":matrix,\"x0\":matrix}");
    add_common(geodesic, copts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (classify->parsed()) return run_classify(classify_n, copts);
        if (verify->parsed()) return run_verify(suite, range, copts);
        if (sectional->parsed()) return run_sectional(sect_n, sect_coeffs, sect_plane, copts);
        if (orbit->parsed()) return run_orbit(orbit_n, orbit_coeffs, orbit_group, copts);
        if (divergence->parsed()) return run_divergence(div_in, copts);
        if (geodesic->parsed())
            return run_geodesic(geo_n, geo_coeffs, geo_t, geo_steps, geo_in, copts);
    } catch (const statgeo::LeftManifold& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const statgeo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
