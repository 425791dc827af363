#include "chordal/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "chordal/errors.hpp"
#include "chordal/grid_scan.hpp"

namespace chordal {
namespace {

constexpr std::size_t kExampleVars = 2;

Series z1z2() { return Series::monomial(kExampleVars, {1, 1}); }
Series one() { return Series::constant(kExampleVars, 1.0); }

// sup |n0 / q| over the polydisc, q = d0 - n0 c certified invertible with
// min |q| >= q_floor > 0.
CertifiedBound loop_gain_bound(const Series& n0, const Series& q, double q_floor, const ClosedLoop& loop,
                               const PolydiscGrid& grid) {
    const double delta = grid.covering_radius();
    CertifiedBound b{0.0, 0.0, BoundKind::Supremum, delta, 0.0};
    if (n0.is_zero())
        return b;
    const Series fns[] = {n0, q};
    const auto ext = detail::scan_extrema(grid, std::span<const Series>(fns), [](std::span<const Complex> v) {
        return std::sqrt(std::norm(v[0]) / std::norm(v[1]));
    });
    // |n/q (z) - n/q (w)| <= |n(z) - n(w)|/|q(z)| + |n(w)| |q(z) - q(w)| / (|q(z)| |q(w)|)
    b.lipschitz = lipschitz_constant(n0) / q_floor + l1_norm(n0) * lipschitz_constant(q) / (q_floor * q_floor);
    // |n|/|q| is off by at most (e_n + ratio e_q)/|q| after rounding.
    const double slack = (evaluation_allowance(n0) + ext.max * evaluation_allowance(q)) / q_floor;
    double hi = ext.max + slack + b.lipschitz * delta;
    const auto& g0 = loop.entries[0][0];
    if (g0.materialized)
        hi = std::min(hi, l1_norm(*g0.materialized) + g0.error_bound);
    b.lo = std::min(std::max(0.0, ext.max - slack), hi);
    b.hi = hi;
    return b;
}

RobustnessCertificate certify_on(const CoprimePlant& p, const CoprimePlant& p0, const Series& controller,
                                 const MarginReport& nominal, const PolydiscGrid& grid) {
    RobustnessCertificate cert{kappa(p, p0, grid), 0.0, nominal.margin, Verdict::NotCertified,
                               is_stabilized_by(p, controller, grid)};
    cert.kappa_upper = cert.kappa.upper;
    if (cert.kappa_upper < nominal.margin)
        cert.verdict = Verdict::CertifiedStable;
    return cert;
}

// The base-grid margin is kept on refined grids: it is already a certified
// lower bound on the theorem's radius.
RefinedCertificate refine(const CoprimePlant& p, const CoprimePlant& p0, const Series& controller,
                          const GridSpec& base, const PolydiscGrid& base_grid, const MarginReport& base_nominal,
                          unsigned max_factor) {
    RefinedCertificate out{certify_on(p, p0, controller, base_nominal, base_grid), base_nominal, base,
                           base_grid.covering_radius(), 1};
    for (unsigned factor = 2; factor <= max_factor; factor *= 2) {
        const auto& c = out.certificate;
        if (c.verdict == Verdict::CertifiedStable || c.kappa.lower >= c.margin)
            break;
        const GridSpec spec = base.refined(factor);
        const double gap = c.margin - c.kappa.lower;
        if (!(c.kappa.ratio_lipschitz * polar_covering_radius(spec.radial, spec.angular) < gap))
            continue;
        const PolydiscGrid grid = make_grid(p.nvars(), spec);
        RobustnessCertificate next{kappa(p, p0, grid), 0.0, base_nominal.margin, Verdict::NotCertified,
                                   c.independent_check};
        next.kappa_upper = next.kappa.upper;
        if (next.kappa_upper < next.margin)
            next.verdict = Verdict::CertifiedStable;
        if (!next.independent_check.proved())
            next.independent_check = is_stabilized_by(p, controller, grid);
        out.certificate = next;
        out.grid = spec;
        out.grid_delta = grid.covering_radius();
        out.factor = factor;
    }
    return out;
}

Series random_perturbation(std::mt19937_64& rng, std::size_t nvars) {
    std::uniform_int_distribution<int> count(1, 8);
    std::uniform_int_distribution<unsigned> power(0, 3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> size(0.0, 1.0);

    Series::TermMap terms;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        Exponent e(nvars);
        for (auto& k : e)
            k = power(rng);
        const double re = gauss(rng);
        const double im = gauss(rng);
        terms[e] += Complex(re, im);
    }
    Series s(nvars, std::move(terms));
    const double norm = l1_norm(s);
    const double target = 0.05 * size(rng);
    if (norm == 0.0 || target == 0.0)
        return Series(nvars);
    return (target / norm) * s;
}

}  // namespace

double robustness_margin(double k, double g) {
    if (!(k >= 0.0) || !(g >= 0.0))
        throw DomainError("margin needs k >= 0 and g >= 0");
    double m = 1.0;
    if (g > 0.0)
        m = std::min(m, 1.0 / g);
    if (k > 0.0)
        m = std::min(m, 1.0 / (k * (1.0 + k * g)));
    return m / 3.0;
}

std::string_view to_string(Verdict verdict) {
    return verdict == Verdict::CertifiedStable ? "CertifiedStable" : "NotCertified";
}

MarginReport margin(const CoprimePlant& p0, const Series& controller, const PolydiscGrid& grid) {
    const ClosedLoop loop = closed_loop(p0, controller, grid);
    if (!loop.stable.proved())
        throw StabilityError("controller does not certifiably stabilize the nominal plant (d - n c invertibility " +
                             std::string(to_string(loop.stable.status)) + ", min |d - n c| in [" +
                             format_real(loop.stable.evidence.lo) + ", " + format_real(loop.stable.evidence.hi) +
                             "])");
    MarginReport report;
    report.stabilizes_nominal = loop.stable;
    report.grid_delta = grid.covering_radius();
    report.k = sup_norm_certified(controller, grid);
    report.g = loop_gain_bound(p0.num(), loop.denominator, loop.stable.evidence.lo, loop, grid);
    report.margin = robustness_margin(report.k.hi, report.g.hi);
    return report;
}

RobustnessCertificate certify(const CoprimePlant& p, const CoprimePlant& p0, const Series& controller,
                              const PolydiscGrid& grid) {
    return certify_on(p, p0, controller, margin(p0, controller, grid), grid);
}

RobustnessCertificate certify(const CoprimePlant& p, const CoprimePlant& p0, const Series& controller,
                              const MarginReport& nominal, const PolydiscGrid& grid) {
    return certify_on(p, p0, controller, nominal, grid);
}

RefinedCertificate certify_refined(const CoprimePlant& p, const CoprimePlant& p0, const Series& controller,
                                   const GridSpec& base, unsigned max_factor) {
    const PolydiscGrid grid = make_grid(p.nvars(), base);
    return refine(p, p0, controller, base, grid, margin(p0, controller, grid), max_factor);
}

CoprimePlant example_nominal(const PolydiscGrid& grid) {
    const Series n = z1z2();
    const Series d = z1z2() * z1z2() - one();
    return make_plant(n, d, BezoutWitness{z1z2(), -one()}, grid);
}

Series example_controller() { return z1z2(); }

CoprimePlant example_plant(double alpha, const PolydiscGrid& grid) {
    if (!(std::abs(alpha) < 1.0))
        throw DomainError("example plants need |alpha| < 1");
    const double s = 1.0 / (1.0 - alpha * alpha);
    const Series n = z1z2() - alpha * one();
    const Series d = z1z2() * z1z2() - one();
    BezoutWitness w{s * (z1z2() + alpha * one()), -s * one()};
    return make_plant(n, d, std::move(w), grid);
}

double example_kappa_bound(double alpha) { return 2.0 / std::sqrt(3.0) * std::abs(alpha); }

double example_alpha_threshold() { return 1.0 / (4.0 * std::sqrt(3.0)); }

std::vector<SweepRow> example_sweep(std::span<const double> alphas, const GridSpec& spec, unsigned max_refine_factor) {
    for (double a : alphas)
        if (!(std::abs(a) < 1.0))
            throw DomainError("alpha = " + format_real(a) + " is outside (-1, 1)");
    std::vector<SweepRow> rows;
    if (alphas.empty())
        return rows;

    const PolydiscGrid grid = make_grid(kExampleVars, spec);
    const CoprimePlant p0 = example_nominal(grid);
    const Series c = example_controller();
    const MarginReport nominal = margin(p0, c, grid);

    rows.reserve(alphas.size());
    for (double a : alphas) {
        const CoprimePlant pa = example_plant(a, grid);
        const RefinedCertificate r = refine(pa, p0, c, spec, grid, nominal, max_refine_factor);
        rows.push_back({a, r.certificate.kappa.lower, r.certificate.kappa.upper, example_kappa_bound(a),
                        r.certificate.margin, r.certificate.verdict, r.certificate.independent_check.status, r.grid,
                        r.grid_delta});
    }
    return rows;
}

TheoremTrial run_perturbation_trial(const CoprimePlant& p0, const Series& controller, const MarginReport& nominal,
                                    const Series& e, const Series& f, const PolydiscGrid& grid) {
    TheoremTrial trial;
    trial.e_norm = l1_norm(e);
    trial.f_norm = l1_norm(f);
    const Series n = p0.num() + e;
    const Series d = p0.den() + f;

    std::optional<CoprimePlant> p;
    if (p0.witnesses()) {
        if (auto w = transfer_witnesses(n, d, *p0.witnesses())) {
            try {
                p = make_plant(n, d, std::move(w), grid);
            } catch (const CoprimenessError&) {
            }
        }
    }
    if (!p) {
        try {
            p = make_plant(n, d, std::nullopt, grid);
        } catch (const CoprimenessError&) {
            trial.coprime = false;
            return trial;
        }
    }

    const RobustnessCertificate cert = certify_on(*p, p0, controller, nominal, grid);
    trial.kappa_upper = cert.kappa_upper;
    trial.verdict = cert.verdict;
    trial.independent = cert.independent_check.status;
    return trial;
}

TheoremReport empirical_theorem_test(unsigned trials, std::uint64_t seed, const PolydiscGrid& grid) {
    TheoremReport report;
    report.trials = trials;
    report.seed = seed;
    report.grid_delta = grid.covering_radius();
    if (trials == 0)
        return report;
    if (grid.nvars() != kExampleVars)
        throw DimensionError("the theorem harness runs over the bidisc");

    const CoprimePlant p0 = example_nominal(grid);
    const Series c = example_controller();
    const MarginReport nominal = margin(p0, c, grid);
    report.margin = nominal.margin;

    std::mt19937_64 rng(seed);
    report.rows.reserve(trials);
    for (unsigned t = 0; t < trials; ++t) {
        const Series e = random_perturbation(rng, kExampleVars);
        const Series f = random_perturbation(rng, kExampleVars);
        const TheoremTrial trial = run_perturbation_trial(p0, c, nominal, e, f, grid);
        report.rows.push_back(trial);
        if (!trial.coprime) {
            ++report.coprimeness_rejected;
            continue;
        }
        const bool certified = trial.verdict == Verdict::CertifiedStable;
        switch (trial.independent) {
            case Status::Proved: ++(certified ? report.certified_stable : report.not_certified_stable); break;
            case Status::Disproved: ++(certified ? report.certified_not_stable : report.not_certified_unstable); break;
            case Status::Inconclusive:
                ++(certified ? report.certified_inconclusive : report.not_certified_inconclusive);
                break;
        }
    }
    return report;
}

}  // namespace chordal
