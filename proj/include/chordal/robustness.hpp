#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "chordal/certified.hpp"
#include "chordal/chordal_metric.hpp"
#include "chordal/plant.hpp"

namespace chordal {

/**
 * (1/3) min{1, 1/g, 1/(k(1+kg))}. The 1/g term is dropped when g == 0 and
 * the last term when k == 0. Requires k, g >= 0.
 */
double robustness_margin(double k, double g);

struct MarginReport {
    CertifiedBound k;  ///< ||c||_inf
    CertifiedBound g;  ///< ||p0/(1 - c p0)||_inf
    double margin = 0.0;  ///< robustness_margin(k.hi, g.hi), a certified lower bound on the radius
    Certificate stabilizes_nominal;
    double grid_delta = 0.0;
};

/// Throws StabilityError unless c certifiably stabilizes p0 on `grid`.
MarginReport margin(const CoprimePlant& p0, const Series& controller, const PolydiscGrid& grid);

enum class Verdict { CertifiedStable, NotCertified };
std::string_view to_string(Verdict verdict);

struct RobustnessCertificate {
    KappaEstimate kappa;
    double kappa_upper = 0.0;
    double margin = 0.0;
    Verdict verdict = Verdict::NotCertified;
    /// Direct is_stabilized_by on the perturbed plant.
    Certificate independent_check;
};

/// verdict is CertifiedStable iff kappa(p, p0).upper < margin (strictly).
RobustnessCertificate certify(const CoprimePlant& p, const CoprimePlant& p0, const Series& controller,
                              const PolydiscGrid& grid);
RobustnessCertificate certify(const CoprimePlant& p, const CoprimePlant& p0, const Series& controller,
                              const MarginReport& nominal, const PolydiscGrid& grid);

/// Result of certify with automatic grid refinement.
struct RefinedCertificate {
    RobustnessCertificate certificate;
    MarginReport nominal;
    GridSpec grid;
    double grid_delta = 0.0;
    unsigned factor = 1;
};

/**
 * Runs certify on `base`, then on grids refined by 2x and 4x (never beyond
 * `max_factor`) while the verdict is NotCertified but kappa.lower < margin.
 * The smallest factor whose covering radius could close the gap
 * (margin - lower) / ratio_lipschitz is tried directly; if none can, the
 * base result is returned. The margin and a Proved independent check from
 * the base grid are reused.
 */
RefinedCertificate certify_refined(const CoprimePlant& p, const CoprimePlant& p0, const Series& controller,
                                   const GridSpec& base, unsigned max_factor = 4);

/// Bidisc example: p0 = z1 z2 / (z1^2 z2^2 - 1) with witnesses (z1 z2, -1).
CoprimePlant example_nominal(const PolydiscGrid& grid);
/// Controller c = z1 z2.
Series example_controller();
/// p_alpha = (z1 z2 - alpha)/(z1^2 z2^2 - 1) with witnesses
/// ((z1 z2 + alpha)/(1 - alpha^2), -1/(1 - alpha^2)). Requires |alpha| < 1.
CoprimePlant example_plant(double alpha, const PolydiscGrid& grid);
/// (2/sqrt 3)|alpha|, the analytic bound on kappa(p_alpha, p0).
double example_kappa_bound(double alpha);
/// 1/(4 sqrt 3), below which the analytic bound certifies p_alpha.
double example_alpha_threshold();

struct SweepRow {
    double alpha = 0.0;
    double kappa_lower = 0.0;
    double kappa_upper = 0.0;
    double analytic_bound = 0.0;
    double margin = 0.0;
    Verdict verdict = Verdict::NotCertified;
    Status independent = Status::Inconclusive;
    GridSpec grid;
    double grid_delta = 0.0;
};

/// One row per alpha, in input order. Throws DomainError if some |alpha| >= 1.
std::vector<SweepRow> example_sweep(std::span<const double> alphas, const GridSpec& grid,
                                    unsigned max_refine_factor = 1);

struct TheoremTrial {
    double e_norm = 0.0;  ///< ||e||_1 (numerator perturbation)
    double f_norm = 0.0;  ///< ||f||_1 (denominator perturbation)
    bool coprime = true;
    double kappa_upper = 0.0;
    Verdict verdict = Verdict::NotCertified;
    Status independent = Status::Inconclusive;
};

struct TheoremReport {
    unsigned trials = 0;
    std::uint64_t seed = 0;
    double margin = 0.0;
    double grid_delta = 0.0;
    unsigned certified_stable = 0;
    unsigned certified_not_stable = 0;  ///< a theorem violation; must stay 0
    unsigned certified_inconclusive = 0;
    unsigned not_certified_stable = 0;
    unsigned not_certified_unstable = 0;
    unsigned not_certified_inconclusive = 0;
    unsigned coprimeness_rejected = 0;
    std::vector<TheoremTrial> rows;
};

/// Perturbs the bidisc example to n0 + e, d0 + f and certifies against it.
TheoremTrial run_perturbation_trial(const CoprimePlant& p0, const Series& controller,
                                    const MarginReport& nominal, const Series& e, const Series& f,
                                    const PolydiscGrid& grid);

/**
 * Random e, f with at most 8 terms, degree <= 3 per variable and
 * ||.||_1 <= 0.05, drawn from a seeded mt19937_64. Deterministic given seed.
 */
TheoremReport empirical_theorem_test(unsigned trials, std::uint64_t seed, const PolydiscGrid& grid);

}  // namespace chordal
