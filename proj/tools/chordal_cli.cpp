// Command-line front end: norms, chordal distances, robustness margins and
// certificates for plants over the Wiener algebra of the polydisc.
//
// Exit codes: 0 success / CertifiedStable, 1 NotCertified (certify) or a
// theorem violation (test-theorem), 2 usage or parse error, 3 coprimeness
// failure, 4 nominal plant not certifiably stabilized.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chordal/certified.hpp"
#include "chordal/chordal_metric.hpp"
#include "chordal/errors.hpp"
#include "chordal/io.hpp"
#include "chordal/plant.hpp"
#include "chordal/polydisc.hpp"
#include "chordal/robustness.hpp"

namespace {

using chordal::io::Json;

enum ExitCode : int {
    kOk = 0,
    kNotCertified = 1,
    kUsage = 2,
    kCoprimeness = 3,
    kNotStabilized = 4,
};

struct RunConfig {
    chordal::GridSpec grid;
    double bezout_tolerance = chordal::kDefaultBezoutTolerance;
    bool json = false;
};

/// Report printed once, at the end, in either output mode.
struct Report {
    Json json;
    std::string human;
    int code = kOk;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string interval(const chordal::CertifiedBound& b) { return "[" + num(b.lo) + ", " + num(b.hi) + "]"; }

std::string point_str(const chordal::PolydiscPoint& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.nvars(); ++i) {
        if (i)
            s += ", ";
        s += num(p[i].real());
        s += p[i].imag() < 0 ? " - " : " + ";
        s += num(std::abs(p[i].imag())) + "i";
    }
    return s + ")";
}

std::string grid_line(const chordal::GridSpec& spec, double delta) {
    return "grid: radial " + std::to_string(spec.radial) + ", angular " + std::to_string(spec.angular) +
           ", covering radius " + num(delta) + "\n";
}

chordal::CoprimePlant load_plant(const std::string& path, const chordal::PolydiscGrid& grid, const RunConfig& cfg) {
    auto data = chordal::io::read_plant_file(path);
    if (data.num.nvars() != grid.nvars())
        throw chordal::DimensionError(path + ": plant in " + std::to_string(data.num.nvars()) +
                                      " variables, expected " + std::to_string(grid.nvars()));
    try {
        return chordal::make_plant(std::move(data.num), std::move(data.den), std::move(data.witnesses), grid,
                                   cfg.bezout_tolerance);
    } catch (const chordal::CoprimenessError& e) {
        throw chordal::CoprimenessError(path + ": " + e.what());
    }
}

std::size_t plant_nvars(const std::string& path) { return chordal::io::read_plant_file(path).num.nvars(); }

Report cmd_norm(const std::string& file, const RunConfig& cfg) {
    const auto f = chordal::io::read_series_file(file);
    const auto grid = chordal::make_grid(f.nvars(), cfg.grid);
    const auto sup = chordal::sup_norm_certified(f, grid);
    const double l1 = chordal::l1_norm(f);

    Report r;
    r.json = {{"l1", l1}, {"sup", chordal::io::to_json(sup)}, {"grid", chordal::io::grid_json(grid)}};
    r.human = "l1 norm:  " + num(l1) + "\nsup norm: " + interval(sup) + "  (Lipschitz " + num(sup.lipschitz) +
              ")\n" + grid_line(grid.spec(), grid.covering_radius());
    return r;
}

Report cmd_distance(const std::string& f1, const std::string& f2, const RunConfig& cfg) {
    const std::size_t n1 = plant_nvars(f1);
    const std::size_t n2 = plant_nvars(f2);
    if (n1 != n2)
        throw chordal::DimensionError("plants in " + std::to_string(n1) + " and " + std::to_string(n2) +
                                      " variables");
    const auto grid = chordal::make_grid(n1, cfg.grid);
    const auto p1 = load_plant(f1, grid, cfg);
    const auto p2 = load_plant(f2, grid, cfg);
    const auto k = chordal::kappa(p1, p2, grid);

    Report r;
    r.json = {{"kappa", chordal::io::to_json(k)}, {"grid", chordal::io::grid_json(grid)}};
    r.human = "kappa in [" + num(k.lower) + ", " + num(k.upper) + "]\nargmax point: " + point_str(k.argmax_point) +
              "\nratio Lipschitz constant: " + num(k.ratio_lipschitz) + "\n" +
              grid_line(grid.spec(), grid.covering_radius());
    return r;
}

Report cmd_margin(const std::string& plant_file, const std::string& controller_file, const RunConfig& cfg) {
    const auto c = chordal::io::read_series_file(controller_file);
    const auto grid = chordal::make_grid(c.nvars(), cfg.grid);
    const auto p0 = load_plant(plant_file, grid, cfg);
    const auto m = chordal::margin(p0, c, grid);

    Report r;
    r.json = chordal::io::to_json(m);
    r.json["grid"] = chordal::io::grid_json(grid);
    r.human = "k = ||c||_inf  in " + interval(m.k) + "\ng = ||g0||_inf in " + interval(m.g) +
              "\nmargin (from k.hi, g.hi): " + num(m.margin) + "\nnominal stabilization: " +
              std::string(chordal::to_string(m.stabilizes_nominal.status)) + " (min |d - n c| in " +
              interval(m.stabilizes_nominal.evidence) + ")\n" + grid_line(grid.spec(), grid.covering_radius());
    return r;
}

Json certificate_json(const chordal::RefinedCertificate& rc) {
    const auto& c = rc.certificate;
    return {{"k", rc.nominal.k.hi},
            {"g", rc.nominal.g.hi},
            {"margin", c.margin},
            {"kappa_lower", c.kappa.lower},
            {"kappa_upper", c.kappa_upper},
            {"verdict", std::string(chordal::to_string(c.verdict))},
            {"independent_check", std::string(chordal::to_string(c.independent_check.status))},
            {"grid", chordal::io::grid_json(rc.grid, rc.grid_delta)},
            {"refinement_factor", rc.factor}};
}

Report cmd_certify(const std::string& nominal_file, const std::string& plant_file, const std::string& controller_file,
                   const RunConfig& cfg, unsigned max_refine) {
    const auto c = chordal::io::read_series_file(controller_file);
    const auto grid = chordal::make_grid(c.nvars(), cfg.grid);
    const auto p0 = load_plant(nominal_file, grid, cfg);
    const auto p = load_plant(plant_file, grid, cfg);
    const auto rc = chordal::certify_refined(p, p0, c, cfg.grid, max_refine);
    const auto& cert = rc.certificate;

    Report r;
    r.json = certificate_json(rc);
    r.human = "k = " + num(rc.nominal.k.hi) + ", g = " + num(rc.nominal.g.hi) + ", margin = " + num(cert.margin) +
              "\nkappa in [" + num(cert.kappa.lower) + ", " + num(cert.kappa_upper) + "]\nverdict: " +
              std::string(chordal::to_string(cert.verdict)) + "\nindependent stability check: " +
              std::string(chordal::to_string(cert.independent_check.status)) + "\n" +
              grid_line(rc.grid, rc.grid_delta) + "refinement factor: " + std::to_string(rc.factor) + "\n";
    r.code = cert.verdict == chordal::Verdict::CertifiedStable ? kOk : kNotCertified;
    return r;
}

std::vector<double> parse_alphas(const std::string& text) {
    auto to_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw chordal::ParseError("alpha range '" + text + "': cannot read '" + s + "'");
        return v;
    };

    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');)
            parts.push_back(p);
        if (parts.size() != 3)
            throw chordal::ParseError("alpha range '" + text + "': expected start:stop:step");
        const double start = to_double(parts[0]);
        const double stop = to_double(parts[1]);
        const double step = to_double(parts[2]);
        if (!(step > 0.0) || stop < start)
            throw chordal::ParseError("alpha range '" + text + "': need step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
        for (std::size_t i = 0; i <= count; ++i)
            out.push_back(start + static_cast<double>(i) * step);
    } else {
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ',');)
            out.push_back(to_double(p));
    }
    for (double a : out)
        if (!(std::abs(a) < 1.0))
            throw chordal::DomainError("alpha = " + num(a) + " is outside (-1, 1)");
    return out;
}

std::string sweep_table(const std::vector<chordal::SweepRow>& rows) {
    std::string s;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%8s  %12s  %12s  %12s  %10s  %-16s  %-12s  %s\n", "alpha", "kappa_lo", "kappa_hi",
                  "(2/sqrt3)|a|", "margin", "verdict", "independent", "delta");
    s += buf;
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%8.4f  %12.6f  %12.6f  %12.6f  %10.6f  %-16s  %-12s  %.5f\n", row.alpha,
                      row.kappa_lower, row.kappa_upper, row.analytic_bound, row.margin,
                      std::string(chordal::to_string(row.verdict)).c_str(),
                      std::string(chordal::to_string(row.independent)).c_str(), row.grid_delta);
        s += buf;
    }
    return s;
}

Report cmd_example(const std::string& range, const RunConfig& cfg, unsigned max_refine) {
    const auto alphas = parse_alphas(range);
    const auto rows = chordal::example_sweep(alphas, cfg.grid, max_refine);
    const double threshold = chordal::example_alpha_threshold();

    Report r;
    Json jrows = Json::array();
    for (const auto& row : rows)
        jrows.push_back(chordal::io::to_json(row));
    r.json = {{"nominal", "z1 z2 / (z1^2 z2^2 - 1)"},
              {"controller", "z1 z2"},
              {"alpha_threshold", threshold},
              {"rows", std::move(jrows)}};
    r.human = "p_alpha = (z1 z2 - alpha)/(z1^2 z2^2 - 1), nominal alpha = 0, controller c = z1 z2\n" +
              sweep_table(rows) + "analytic guarantee holds for |alpha| < 1/(4 sqrt 3) = " + num(threshold) + "\n";
    return r;
}

Report cmd_sweep(const std::string& nominal_file, const std::string& controller_file,
                 const std::vector<std::string>& plant_files, const RunConfig& cfg, unsigned max_refine) {
    const auto c = chordal::io::read_series_file(controller_file);
    const auto grid = chordal::make_grid(c.nvars(), cfg.grid);
    const auto p0 = load_plant(nominal_file, grid, cfg);
    const auto nominal = chordal::margin(p0, c, grid);

    std::vector<chordal::CoprimePlant> plants;
    for (const auto& f : plant_files)
        plants.push_back(load_plant(f, grid, cfg));

    Report r;
    Json rows = Json::array();
    r.human = "margin = " + num(nominal.margin) + " (k = " + num(nominal.k.hi) + ", g = " + num(nominal.g.hi) + ")\n";
    for (std::size_t i = 0; i < plants.size(); ++i) {
        const auto rc = chordal::certify_refined(plants[i], p0, c, cfg.grid, max_refine);
        Json row = certificate_json(rc);
        row["plant"] = plant_files[i];
        rows.push_back(std::move(row));
        r.human += plant_files[i] + ": kappa in [" + num(rc.certificate.kappa.lower) + ", " +
                   num(rc.certificate.kappa_upper) + "], " + std::string(chordal::to_string(rc.certificate.verdict)) +
                   ", independent " + std::string(chordal::to_string(rc.certificate.independent_check.status)) +
                   "\n";
    }
    r.json = {{"margin", nominal.margin}, {"k", nominal.k.hi}, {"g", nominal.g.hi}, {"rows", std::move(rows)}};
    return r;
}

Report cmd_test_theorem(unsigned trials, std::uint64_t seed, const RunConfig& cfg) {
    const auto grid = chordal::make_grid(2, cfg.grid);
    const auto rep = chordal::empirical_theorem_test(trials, seed, grid);

    Report r;
    r.json = chordal::io::to_json(rep);
    r.human = "trials " + std::to_string(rep.trials) + ", seed " + std::to_string(rep.seed) + ", margin " +
              num(rep.margin) + "\n" + "  certified, stable:           " + std::to_string(rep.certified_stable) +
              "\n" + "  certified, NOT stable:       " + std::to_string(rep.certified_not_stable) + "\n" +
              "  certified, inconclusive:     " + std::to_string(rep.certified_inconclusive) + "\n" +
              "  not certified, stable:       " + std::to_string(rep.not_certified_stable) + "\n" +
              "  not certified, unstable:     " + std::to_string(rep.not_certified_unstable) + "\n" +
              "  not certified, inconclusive: " + std::to_string(rep.not_certified_inconclusive) + "\n" +
              "  coprimeness rejected:        " + std::to_string(rep.coprimeness_rejected) + "\n" +
              grid_line(grid.spec(), grid.covering_radius());
    r.code = rep.certified_not_stable == 0 ? kOk : kNotCertified;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified chordal-metric robustness analysis over polydisc algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--grid-radial", cfg.grid.radial, "Radial samples per coordinate, including 0 and 1")
        ->check(CLI::Range(2u, 1u << 20));
    app.add_option("--grid-angular", cfg.grid.angular, "Angular samples per ring")->check(CLI::Range(4u, 1u << 24));
    app.add_option("--bezout-tol", cfg.bezout_tolerance, "Tolerance on ||n x + d y - 1||_1")
        ->check(CLI::PositiveNumber);
    app.add_flag("--json", cfg.json, "Machine-readable JSON output");

    std::string file1, file2, file3, alphas = "0:0.3:0.02";
    std::vector<std::string> plant_files;
    unsigned max_refine = 4, trials = 200;
    std::uint64_t seed = 7;

    auto* norm = app.add_subcommand("norm", "Certified sup norm and l1 norm of a series");
    norm->add_option("series", file1, "Series JSON file")->required();

    auto* distance = app.add_subcommand("distance", "Certified chordal distance between two plants");
    distance->add_option("plant1", file1, "Plant JSON file")->required();
    distance->add_option("plant2", file2, "Plant JSON file")->required();

    auto* margin = app.add_subcommand("margin", "Robustness margin of a stabilizing controller");
    margin->add_option("plant", file1, "Nominal plant JSON file")->required();
    margin->add_option("controller", file2, "Controller series JSON file")->required();

    auto* certify = app.add_subcommand("certify", "Certify that a plant near the nominal one stays stabilized");
    certify->add_option("nominal", file1, "Nominal plant JSON file")->required();
    certify->add_option("plant", file2, "Perturbed plant JSON file")->required();
    certify->add_option("controller", file3, "Controller series JSON file")->required();
    certify->add_option("--max-refine", max_refine, "Largest grid refinement factor (1, 2 or 4)")
        ->check(CLI::Range(1u, 16u));

    auto* example = app.add_subcommand("example", "Sweep the bidisc example family p_alpha");
    example->add_option("--alphas", alphas, "start:stop:step or a comma-separated list");
    example->add_option("--max-refine", max_refine, "Largest grid refinement factor")->check(CLI::Range(1u, 16u));

    auto* sweep = app.add_subcommand("sweep", "Certify several plants against one nominal plant and controller");
    sweep->add_option("nominal", file1, "Nominal plant JSON file")->required();
    sweep->add_option("controller", file2, "Controller series JSON file")->required();
    sweep->add_option("plants", plant_files, "Plant JSON files")->required();
    sweep->add_option("--max-refine", max_refine, "Largest grid refinement factor")->check(CLI::Range(1u, 16u));

    auto* theorem = app.add_subcommand("test-theorem", "Randomized soundness check of the robustness theorem");
    theorem->add_option("--trials", trials, "Number of random perturbations");
    theorem->add_option("--seed", seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    Report report;
    try {
        if (*norm)
            report = cmd_norm(file1, cfg);
        else if (*distance)
            report = cmd_distance(file1, file2, cfg);
        else if (*margin)
            report = cmd_margin(file1, file2, cfg);
        else if (*certify)
            report = cmd_certify(file1, file2, file3, cfg, max_refine);
        else if (*example)
            report = cmd_example(alphas, cfg, max_refine);
        else if (*sweep)
            report = cmd_sweep(file1, file2, plant_files, cfg, max_refine);
        else if (*theorem)
            report = cmd_test_theorem(trials, seed, cfg);
    } catch (const chordal::CoprimenessError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCoprimeness;
    } catch (const chordal::StabilityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNotStabilized;
    } catch (const chordal::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }

    if (cfg.json)
        std::cout << report.json.dump(2) << '\n';
    else
        std::cout << report.human;
    return report.code;
}
