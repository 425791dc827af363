#include "chordal/chordal_metric.hpp"

#include <algorithm>
#include <cmath>

#include "chordal/errors.hpp"
#include "chordal/grid_scan.hpp"

namespace chordal {
namespace {

void require_compatible(const CoprimePlant& p1, const CoprimePlant& p2) {
    if (p1.nvars() != p2.nvars())
        throw DimensionError("plants have different numbers of variables");
}

}  // namespace

double kappa_integrand(Complex n1, Complex d1, Complex n2, Complex d2) {
    constexpr double kVanish = 1e-28;  // (1e-14)^2
    const double nn1 = std::norm(n1), dd1 = std::norm(d1);
    const double nn2 = std::norm(n2), dd2 = std::norm(d2);
    if ((nn1 < kVanish && dd1 < kVanish) || (nn2 < kVanish && dd2 < kVanish))
        throw CoprimenessError("numerator and denominator vanish together: coprimeness violated");
    return std::min(1.0, std::sqrt(std::norm(n1 * d2 - n2 * d1) / ((nn1 + dd1) * (nn2 + dd2))));
}

double kappa_pointwise(const CoprimePlant& p1, const CoprimePlant& p2, const PolydiscPoint& point) {
    require_compatible(p1, p2);
    return kappa_integrand(gelfand_eval(p1.num(), point), gelfand_eval(p1.den(), point),
                           gelfand_eval(p2.num(), point), gelfand_eval(p2.den(), point));
}

double ratio_lipschitz(const CoprimePlant& p1, const CoprimePlant& p2) {
    require_compatible(p1, p2);
    const Series cross = p1.num() * p2.den() - p2.num() * p1.den();
    if (cross.is_zero())
        return 0.0;
    const double b1 = p1.floor();
    const double b2 = p2.floor();
    const double l1 = lipschitz_constant(p1.num()) + lipschitz_constant(p1.den());
    const double l2 = lipschitz_constant(p2.num()) + lipschitz_constant(p2.den());
    return lipschitz_constant(cross) / (b1 * b2) +
           l1_norm(cross) * (l1 / (b1 * b1 * b2) + l2 / (b1 * b2 * b2));
}

KappaEstimate kappa(const CoprimePlant& p1, const CoprimePlant& p2, const PolydiscGrid& grid) {
    require_compatible(p1, p2);
    if (grid.nvars() != p1.nvars())
        throw DimensionError("plants and grid have different numbers of variables");
    const Series fns[] = {p1.num(), p1.den(), p2.num(), p2.den()};
    const auto ext = detail::scan_extrema(grid, std::span<const Series>(fns), [](std::span<const Complex> v) {
        return kappa_integrand(v[0], v[1], v[2], v[3]);
    });
    const double lip = ratio_lipschitz(p1, p2);
    const double delta = grid.covering_radius();
    const double lower = std::clamp(ext.max, 0.0, 1.0);
    const double upper = std::min(1.0, lower + lip * delta);
    return {lower, upper, delta, lip, grid.point(ext.argmax)};
}

double kappa_sampled_only(const CoprimePlant& p1, const CoprimePlant& p2, std::span<const PolydiscPoint> points) {
    if (points.empty())
        throw DomainError("kappa_sampled_only needs at least one point");
    double best = 0.0;
    for (const auto& p : points)
        best = std::max(best, kappa_pointwise(p1, p2, p));
    return best;
}

}  // namespace chordal
