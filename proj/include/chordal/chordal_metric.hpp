#pragma once

#include <span>

#include "chordal/plant.hpp"
#include "chordal/polydisc.hpp"

namespace chordal {

/// Enclosure [lower, upper] of the chordal distance between two plants.
struct KappaEstimate {
    double lower = 0.0;
    double upper = 0.0;
    double grid_delta = 0.0;
    double ratio_lipschitz = 0.0;
    PolydiscPoint argmax_point;
};

/// |n1 d2 - n2 d1| / (sqrt(|n1|^2+|d1|^2) sqrt(|n2|^2+|d2|^2)) from values.
/// Throws CoprimenessError when both factors of one plant vanish.
double kappa_integrand(Complex n1, Complex d1, Complex n2, Complex d2);

double kappa_pointwise(const CoprimePlant& p1, const CoprimePlant& p2, const PolydiscPoint& point);

/**
 * Lipschitz constant of the chordal integrand over the polydisc:
 *
 *   L(N)/(b1 b2) + ||N||_1 ((L(n1)+L(d1))/(b1^2 b2) + (L(n2)+L(d2))/(b1 b2^2))
 *
 * with N = n1 d2 - n2 d1 and b_i the plants' certified floors.
 */
double ratio_lipschitz(const CoprimePlant& p1, const CoprimePlant& p2);

/// lower = grid max of the integrand, upper = lower + ratio_lipschitz * delta,
/// both clamped to [0, 1]. The argmax is the first maximizing grid point.
KappaEstimate kappa(const CoprimePlant& p1, const CoprimePlant& p2, const PolydiscGrid& grid);

/// Max of the integrand over `points`; a lower estimate with no certificate.
double kappa_sampled_only(const CoprimePlant& p1, const CoprimePlant& p2,
                          std::span<const PolydiscPoint> points);

}  // namespace chordal
