#include "chordal/certified.hpp"

#include <algorithm>
#include <cmath>

#include "chordal/grid_scan.hpp"

namespace chordal {

std::string_view to_string(Status status) {
    switch (status) {
        case Status::Proved: return "Proved";
        case Status::Disproved: return "Disproved";
        case Status::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

CertifiedBound sup_norm_certified(const Series& f, const PolydiscGrid& grid) {
    const double delta = grid.covering_radius();
    const double lip = lipschitz_constant(f);
    CertifiedBound b{0.0, 0.0, BoundKind::Supremum, delta, lip};
    if (f.is_zero())
        return b;
    const auto ext = detail::scan_extrema(grid, std::span(&f, 1),
                                          [](std::span<const Complex> v) { return std::sqrt(std::norm(v[0])); });
    const double l1 = l1_norm(f);
    const double slack = evaluation_allowance(f);
    b.lo = std::min(std::max(0.0, ext.max - slack), l1);
    b.hi = std::min(ext.max + slack + lip * delta, l1);
    return b;
}

CertifiedBound min_modulus_certified(const Series& f, const PolydiscGrid& grid) {
    const double delta = grid.covering_radius();
    const double lip = lipschitz_constant(f);
    CertifiedBound b{0.0, 0.0, BoundKind::InfimumModulus, delta, lip};
    if (f.is_zero())
        return b;
    const auto ext = detail::scan_extrema(grid, std::span(&f, 1),
                                          [](std::span<const Complex> v) { return std::sqrt(std::norm(v[0])); });
    b.hi = ext.min;
    // |f(z)| >= |f(0)| - ||f - f(0)||_1 everywhere on the polydisc.
    const double a0 = std::abs(f.constant_term());
    const double dominance = a0 - (l1_norm(f) - a0);
    b.lo = std::clamp(std::max(b.hi - evaluation_allowance(f) - lip * delta, dominance), 0.0, b.hi);
    return b;
}

Certificate invertibility_from(const CertifiedBound& min_modulus) {
    if (min_modulus.hi < kSampledZero)
        return {Status::Disproved, min_modulus};
    if (min_modulus.lo > 0.0)
        return {Status::Proved, min_modulus};
    return {Status::Inconclusive, min_modulus};
}

Certificate is_invertible(const Series& f, const PolydiscGrid& grid) {
    return invertibility_from(min_modulus_certified(f, grid));
}

}  // namespace chordal
