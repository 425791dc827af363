#include "chordal/plant.hpp"

#include <cmath>
#include <numbers>

#include "chordal/errors.hpp"
#include "chordal/grid_scan.hpp"

namespace chordal {
namespace {

// Materialized inverses beyond this many terms are not worth building.
constexpr double kMaxMaterializedTerms = 50000.0;
constexpr double kNeumannTarget = 1e-13;

double estimated_power_terms(const Series& u, unsigned power) {
    double count = 1.0;
    for (std::size_t v = 0; v < u.nvars(); ++v)
        count *= static_cast<double>(u.degree(v)) * power + 1.0;
    return count;
}

// Neumann inverse sized for kNeumannTarget, or empty when impractical.
std::optional<NeumannInverse> practical_inverse(const Series& f) {
    const Complex f0 = f.constant_term();
    if (f0 == Complex{})
        return std::nullopt;
    const Series u = Series::constant(f.nvars(), 1.0) - (1.0 / f0) * f;
    const double r = l1_norm(u);
    if (r >= 1.0)
        return std::nullopt;
    const unsigned m = neumann_terms_for(r, kNeumannTarget);
    if (std::pow(r, m + 1.0) > kNeumannTarget || estimated_power_terms(u, m) > kMaxMaterializedTerms)
        return std::nullopt;
    return neumann_inverse(f, m);
}

}  // namespace

CoprimePlant make_plant(Series num, Series den, std::optional<BezoutWitness> witnesses,
                        const PolydiscGrid& grid, double bezout_tolerance) {
    if (num.nvars() != den.nvars())
        throw DimensionError("numerator and denominator have different numbers of variables");
    if (den.is_zero())
        throw CoprimenessError("zero denominator");

    CoprimePlant plant(std::move(num), std::move(den));
    const Series& n = plant.num_;
    const Series& d = plant.den_;

    if (witnesses) {
        const auto& [x, y] = *witnesses;
        if (x.nvars() != n.nvars() || y.nvars() != n.nvars())
            throw DimensionError("Bezout witnesses have a different number of variables");
        const double residual = l1_norm(n * x + d * y - Series::constant(n.nvars(), 1.0));
        if (!(residual <= bezout_tolerance))
            throw CoprimenessError("Bezout residual ||n x + d y - 1||_1 = " + format_real(residual) +
                                   " exceeds tolerance " + format_real(bezout_tolerance));
        plant.evidence_ = CoprimeEvidence::Witnesses;
        plant.bezout_residual_ = residual;
        // 1 - residual <= |n x + d y| <= sqrt(|n|^2 + |d|^2) sqrt(|x|^2 + |y|^2)
        plant.floor_ = (1.0 - residual) / std::hypot(l1_norm(x), l1_norm(y));
        plant.witnesses_ = std::move(witnesses);
        return plant;
    }

    if (grid.nvars() != n.nvars())
        throw DimensionError("plant and grid have different numbers of variables");
    const Series factors[] = {n, d};
    const auto ext = detail::scan_extrema(grid, std::span<const Series>(factors), [](std::span<const Complex> v) {
        return std::sqrt(std::norm(v[0])) + std::sqrt(std::norm(v[1]));
    });
    const double lip = lipschitz_constant(n) + lipschitz_constant(d);
    const double delta = grid.covering_radius();
    const double slack = evaluation_allowance(n) + evaluation_allowance(d);
    CertifiedBound bound{std::max(0.0, ext.min - slack - lip * delta), ext.min, BoundKind::InfimumModulus, delta,
                         lip};
    if (ext.min < kSampledZero)
        throw CoprimenessError("numerator and denominator have a common zero near " +
                               std::string("grid point #") + std::to_string(ext.argmin) +
                               "; coprimeness disproved");
    if (!(bound.lo > 0.0))
        throw CoprimenessError("coprimeness inconclusive at covering radius " + format_real(delta) +
                               " (min |n|+|d| on grid " + format_real(ext.min) + ", slack " +
                               format_real(lip * delta) + "); refine the grid or supply witnesses");
    plant.evidence_ = CoprimeEvidence::NoCommonZero;
    plant.no_common_zero_ = bound;
    // |n| + |d| <= sqrt(2) sqrt(|n|^2 + |d|^2)
    plant.floor_ = bound.lo / std::numbers::sqrt2;
    return plant;
}

std::optional<BezoutWitness> transfer_witnesses(const Series& num, const Series& den, const BezoutWitness& nearby) {
    const Series u = num * nearby.x + den * nearby.y;
    const auto h = practical_inverse(u);
    if (!h)
        return std::nullopt;
    return BezoutWitness{nearby.x * h->inverse, nearby.y * h->inverse};
}

Series loop_denominator(const CoprimePlant& plant, const Series& controller) {
    if (controller.nvars() != plant.nvars())
        throw DimensionError("controller and plant have different numbers of variables");
    return plant.den() - plant.num() * controller;
}

Certificate is_stabilized_by(const CoprimePlant& plant, const Series& controller, const PolydiscGrid& grid) {
    return is_invertible(loop_denominator(plant, controller), grid);
}

ClosedLoop closed_loop(const CoprimePlant& plant, const Series& controller, const PolydiscGrid& grid) {
    const Series q = loop_denominator(plant, controller);
    const Series nc = plant.num() * controller;

    auto entry = [](Series numerator) { return ClosedLoopEntry{std::move(numerator), std::nullopt, 0.0}; };
    ClosedLoop loop{q,
                    {{{entry(plant.num()), entry(nc)}, {entry(nc), entry(controller * plant.den())}}},
                    entry(plant.den()),
                    is_invertible(q, grid),
                    std::nullopt};

    if (!loop.stable.proved())
        return loop;
    loop.inverse = practical_inverse(q);
    if (!loop.inverse)
        return loop;

    auto materialize = [&](ClosedLoopEntry& e) {
        e.materialized = e.numerator * loop.inverse->inverse;
        e.error_bound = l1_norm(e.numerator) * loop.inverse->inverse_error_bound;
    };
    for (auto& row : loop.entries)
        for (auto& e : row)
            materialize(e);
    materialize(loop.sensitivity);
    return loop;
}

}  // namespace chordal
