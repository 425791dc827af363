// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "chordal/chordal_metric.hpp"
#include "chordal/riemann_sphere.hpp"
#include "chordal/robustness.hpp"
#include "support/oracles.hpp"
#include "support/random_plants.hpp"
#include "support/run.hpp"

using namespace chordal;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// 1. Margin of the bidisc example through the CLI.
Outcome margin_reproduction() {
    const auto r = cli::run("--json margin " + cli::data("p0.json") + " " + cli::data("controller.json"));
    if (r.code != 0)
        return fail("exit code " + std::to_string(r.code));
    const auto j = json::parse(r.out);
    const double klo = j["k_bound"]["lo"], khi = j["k_bound"]["hi"];
    const double glo = j["g_bound"]["lo"], ghi = j["g_bound"]["hi"];
    const double m = j["margin"];
    const bool ok = klo <= 1.0 && 1.0 <= khi && khi - klo <= 0.01 && glo <= 1.0 && 1.0 <= ghi &&
                    ghi - glo <= 0.01 && m >= 1.0 / 6.0 - 0.01 && m <= 1.0 / 6.0;
    return {ok, fmt("k in [%.17g, %.17g], ", klo, khi) + fmt("g in [%.17g, %.17g], ", glo, ghi) +
                    fmt("margin %.17g", m)};
}

// 2. Grid lower estimate of kappa(p_alpha, p0) against (2/sqrt 3)|alpha|.
Outcome kappa_bound() {
    const auto grid = make_grid(2, GridSpec{});
    const auto p0 = example_nominal(grid);
    bool ok = true;
    std::string detail;
    for (double alpha : {0.02, 0.05, 0.10, 0.14}) {
        const auto k = kappa(example_plant(alpha, grid), p0, grid);
        const double bound = example_kappa_bound(alpha);
        ok = ok && k.lower <= bound + 1e-9;
        detail += fmt("a=%.2f: %.6f <= %.6f; ", alpha, k.lower, bound);
    }
    return {ok, detail};
}

// 3. CLI certify with auto-refinement; independent checks.
Outcome threshold() {
    bool ok = true;
    std::string detail;
    for (const char* alpha : {"0.05", "0.5", "0.9"}) {
        const auto r = cli::run("--json certify " + cli::data("p0.json") + " " + cli::data("p_alpha_" + std::string(alpha) + ".json") +
                                " " + cli::data("controller.json"));
        if (r.out.empty())
            return fail(std::string("alpha ") + alpha + ": exit " + std::to_string(r.code) + " with no report");
        const auto j = json::parse(r.out);
        const bool proved = j["independent_check"] == "Proved";
        ok = ok && proved;
        if (std::string(alpha) == "0.05")
            ok = ok && r.code == 0 && j["verdict"] == "CertifiedStable";
        detail += std::string("a=") + alpha + ": exit " + std::to_string(r.code) + ", " +
                  j["verdict"].get<std::string>() + ", independent " + j["independent_check"].get<std::string>() +
                  fmt(", delta %.4f; ", j["grid"]["delta"].get<double>());
    }
    return {ok, detail};
}

Complex random_finite(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < 0.02)
        return 0.0;
    return std::polar(std::pow(10.0, -4.0 + 8.0 * u(rng)), 2.0 * std::numbers::pi * u(rng));
}

// 4. chordal >= partington_bound on 10^5 triples.
Outcome lemma_suite() {
    std::mt19937_64 rng(104);
    std::uniform_real_distribution<double> cap(1e-6, 1.0 - 1e-6);
    int violations = 0;
    double worst = -INFINITY;
    for (int i = 0; i < 100000; ++i) {
        const Complex z1 = random_finite(rng), z2 = random_finite(rng);
        const double gap = partington_bound(z1, z2, cap(rng)) - chordal::chordal(z1, z2);
        worst = std::max(worst, gap);
        violations += gap > 1e-12;
    }
    return {violations == 0, std::to_string(violations) + " violations, max(bound - chordal) = " + fmt("%.3g", worst)};
}

// 5. Stereographic oracle on 10^5 pairs and the kappa(a, 1/a) identity.
Outcome stereographic_oracle() {
    std::mt19937_64 rng(105);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto extended = [&]() -> ExtendedComplex {
        if (u(rng) < 0.05)
            return ExtendedComplex::infinity();
        return random_finite(rng);
    };
    auto project = [](const ExtendedComplex& z) {
        return z.is_infinite() ? oracle::P3{0.0, 0.0, 1.0} : oracle::project(z.value());
    };
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const auto a = extended(), b = extended();
        worst = std::max(worst, std::abs(chordal::chordal(a, b) - oracle::dist3(project(a), project(b))));
    }
    double worst_cap = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double a = i / 101.0;
        worst_cap = std::max(worst_cap, std::abs(chordal::chordal(a, 1.0 / a) - (1.0 - a * a) / (1.0 + a * a)));
    }
    return {worst <= 1e-12 && worst_cap <= 1e-12,
            fmt("max |chordal - 3D| = %.3g, max |kappa(a,1/a) - (1-a^2)/(1+a^2)| = %.3g", worst, worst_cap)};
}

// 6. Metric axioms on 50 random coprime triples over 10^3 shared points, and
// independence of the factorization.
Outcome metric_axioms() {
    std::mt19937_64 rng(106);
    const auto grid = make_grid(2, 9, 24);
    std::vector<PolydiscPoint> pts;
    for (int i = 0; i < 1000; ++i)
        pts.emplace_back(oracle::polydisc_point(rng, 2));

    int asym = 0, triangle = 0, self = 0;
    double worst_triangle = -INFINITY;
    for (int t = 0; t < 50; ++t) {
        const auto a = oracle::random_coprime_plant(rng, grid);
        const auto b = oracle::random_coprime_plant(rng, grid);
        const auto c = oracle::random_coprime_plant(rng, grid);
        self += kappa_sampled_only(a, a, pts) != 0.0;
        for (const auto& z : pts) {
            const double ab = kappa_pointwise(a, b, z);
            asym += ab != kappa_pointwise(b, a, z);
            const double excess = ab - kappa_pointwise(a, c, z) - kappa_pointwise(c, b, z);
            worst_triangle = std::max(worst_triangle, excess);
            triangle += excess > 1e-9;
        }
    }

    const Series units[] = {Series::constant(2, 2.0), Series::constant(2, 1.0) + 0.3 * Series::variable(2, 0)};
    double worst_scaling = 0.0;
    for (int t = 0; t < 10; ++t) {
        const auto p = oracle::random_coprime_plant(rng, grid);
        const auto q = oracle::random_coprime_plant(rng, grid);
        const double base = kappa(p, q, grid).lower;
        for (const auto& u : units) {
            const Series inv = neumann_inverse(u, neumann_terms_for(0.3, 1e-15)).inverse;
            const auto pu = make_plant(u * p.num(), u * p.den(),
                                       BezoutWitness{inv * p.witnesses()->x, inv * p.witnesses()->y}, grid);
            worst_scaling = std::max(worst_scaling, std::abs(kappa(pu, q, grid).lower - base));
            for (const auto& z : pts)
                worst_scaling = std::max(worst_scaling, std::abs(kappa_pointwise(pu, q, z) - kappa_pointwise(p, q, z)));
        }
    }
    const bool ok = asym == 0 && triangle == 0 && self == 0 && worst_scaling <= 1e-10;
    return {ok, "asymmetric " + std::to_string(asym) + ", triangle violations " + std::to_string(triangle) +
                    fmt(" (max excess %.3g)", worst_triangle) + ", nonzero self-distance " + std::to_string(self) +
                    fmt(", max scaling change %.3g", worst_scaling)};
}

// 7. Randomized soundness harness through the CLI.
Outcome theorem_harness() {
    const auto r = cli::run("--json test-theorem --trials 200 --seed 7");
    if (r.out.empty())
        return fail("exit " + std::to_string(r.code) + " with no report");
    const auto j = json::parse(r.out);
    const unsigned bad = j["certified_not_stable"];
    return {bad == 0 && r.code == 0,
            "certified+stable " + std::to_string(j["certified_stable"].get<unsigned>()) + ", certified+NOT stable " +
                std::to_string(bad) + ", not certified+stable " +
                std::to_string(j["not_certified_stable"].get<unsigned>()) + ", not certified+unstable " +
                std::to_string(j["not_certified_unstable"].get<unsigned>()) + ", coprimeness rejected " +
                std::to_string(j["coprimeness_rejected"].get<unsigned>())};
}

// 8. Certified bounds against brute force on a 10x finer grid, and the
// Lipschitz contract.
Outcome bound_soundness() {
    std::mt19937_64 rng(108);
    const GridSpec coarse[] = {{2, 4}, {3, 6}, {3, 8}};
    int misses = 0, lipschitz_misses = 0;
    double worst_excess = -INFINITY;
    for (int s = 0; s < 20; ++s) {
        const Series f = oracle::random_series(rng, 2, 6, 3);
        for (const auto& spec : coarse) {
            const auto g = make_grid(2, spec);
            const auto sup = sup_norm_certified(f, g);
            const auto inf = min_modulus_certified(f, g);

            // Brute force over the product of the fine axis with itself, using
            // per-axis power tables.
            const auto fine = spec.refined(10);
            const auto axis = oracle::polar_axis(fine.radial, fine.angular);
            const unsigned deg = std::max(f.degree(0), f.degree(1));
            std::vector<std::vector<Complex>> pw(axis.size(), std::vector<Complex>(deg + 1));
            for (std::size_t i = 0; i < axis.size(); ++i)
                for (unsigned k = 0; k <= deg; ++k)
                    pw[i][k] = std::pow(axis[i], static_cast<int>(k));
            double hi = 0.0, lo = INFINITY;
            for (std::size_t a = 0; a < axis.size(); ++a)
                for (std::size_t b = 0; b < axis.size(); ++b) {
                    Complex v{};
                    for (const auto& [e, c] : f.terms())
                        v += c * pw[a][e[0]] * pw[b][e[1]];
                    const double m = std::abs(v);
                    hi = std::max(hi, m);
                    lo = std::min(lo, m);
                }
            const double excess = std::max({hi - sup.hi, sup.lo - hi, lo - inf.hi, inf.lo - lo});
            worst_excess = std::max(worst_excess, excess);
            misses += excess > 1e-12;
        }
        const double lip = lipschitz_constant(f);
        for (int i = 0; i < 10000; ++i) {
            const auto z = oracle::polydisc_point(rng, 2), w = oracle::polydisc_point(rng, 2);
            const double rho = std::max(std::abs(z[0] - w[0]), std::abs(z[1] - w[1]));
            lipschitz_misses += std::abs(oracle::eval(f, z) - oracle::eval(f, w)) > lip * rho + 1e-12;
        }
    }
    return {misses == 0 && lipschitz_misses == 0,
            std::to_string(misses) + " bracket misses (max excess " + fmt("%.3g", worst_excess) + "), " +
                std::to_string(lipschitz_misses) + " Lipschitz violations"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"margin of the bidisc example (k, g contain 1; margin in [1/6 - 0.01, 1/6]; <= 30 s)", margin_reproduction},
        {"kappa lower estimate <= (2/sqrt 3)|alpha| at the default grid", kappa_bound},
        {"certify alpha = 0.05 exits 0; independent check Proved for 0.05, 0.5, 0.9 (<= 300 s)", threshold},
        {"chordal >= partington_bound on 1e5 random triples", lemma_suite},
        {"chordal equals the stereographic 3D distance on 1e5 pairs", stereographic_oracle},
        {"metric axioms and factorization independence on 50 random triples", metric_axioms},
        {"test-theorem --trials 200 --seed 7 has no certified-but-unstable trial (<= 600 s)", theorem_harness},
        {"certified bounds bracket 10x finer brute force; Lipschitz contract", bound_soundness},
    };
    const double limits[] = {30.0, INFINITY, 300.0, INFINITY, INFINITY, INFINITY, 600.0, INFINITY};

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > limits[i]) {
            o.pass = false;
            o.detail += " [over time budget]";
        }
        failed += !o.pass;
        std::printf("%s  [%zu] %s (%.1f s)\n      %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
