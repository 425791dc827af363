#include "chordal/polydisc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chordal/errors.hpp"

namespace chordal {

PolydiscPoint::PolydiscPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
    if (coords_.empty())
        throw DomainError("a polydisc point needs at least one coordinate");
    for (const auto& c : coords_)
        if (!(std::abs(c) <= 1.0 + kPolydiscTolerance))
            throw DomainError("polydisc coordinate outside the closed unit disc");
}

PolydiscPoint::PolydiscPoint(std::initializer_list<Complex> coords)
    : PolydiscPoint(std::vector<Complex>(coords)) {}

double polydisc_distance(const PolydiscPoint& z, const PolydiscPoint& w) {
    if (z.nvars() != w.nvars())
        throw DimensionError("points of different dimension");
    double d = 0.0;
    for (std::size_t i = 0; i < z.nvars(); ++i)
        d = std::max(d, std::abs(z[i] - w[i]));
    return d;
}

PolydiscGrid::PolydiscGrid(std::size_t nvars, std::vector<Complex> axis, double covering_radius,
                           GridSpec spec)
    : nvars_(nvars), axis_(std::move(axis)), covering_radius_(covering_radius), spec_(spec), size_(1) {
    if (nvars_ == 0 || axis_.empty())
        throw DomainError("empty polydisc grid");
    for (const auto& c : axis_)
        if (!(std::abs(c) <= 1.0 + kPolydiscTolerance))
            throw DomainError("grid axis sample outside the closed unit disc");
    if (!(covering_radius_ >= 0.0))
        throw DomainError("negative covering radius");
    for (std::size_t v = 0; v < nvars_; ++v)
        size_ *= axis_.size();
}

PolydiscPoint PolydiscGrid::point(std::size_t index) const {
    std::vector<Complex> c(nvars_);
    for (std::size_t v = nvars_; v-- > 0;) {
        c[v] = axis_[index % axis_.size()];
        index /= axis_.size();
    }
    return PolydiscPoint(std::move(c));
}

std::vector<PolydiscPoint> PolydiscGrid::points() const {
    std::vector<PolydiscPoint> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i)
        out.push_back(point(i));
    return out;
}

double polar_covering_radius(unsigned radial_steps, unsigned angular_steps) {
    if (radial_steps < 2 || angular_steps < 4)
        throw DomainError("grid needs radial_steps >= 2 and angular_steps >= 4");
    const double s = std::sin(std::numbers::pi / (2.0 * angular_steps));
    const double s2 = 4.0 * s * s;
    const double cos_gap = std::cos(std::numbers::pi / angular_steps);
    const double h = 1.0 / (radial_steps - 1);

    double worst = 0.0;
    for (unsigned j = 0; j + 1 < radial_steps; ++j) {
        const double a = j * h;
        const double b = (j + 1 == radial_steps - 1) ? 1.0 : (j + 1) * h;
        auto f = [&](double r, double c) { return (r - c) * (r - c) + s2 * r * c; };
        auto nearest = [&](double r) { return std::min(f(r, a), f(r, b)); };
        const double cross = std::clamp((a + b) / (2.0 * cos_gap), a, b);
        worst = std::max({worst, nearest(a), nearest(b), nearest(cross)});
    }
    // Outward rounding of the final square root.
    return std::sqrt(worst) * (1.0 + 1e-12);
}

PolydiscGrid make_grid(std::size_t nvars, unsigned radial_steps, unsigned angular_steps, double angle_offset) {
    if (nvars == 0)
        throw DomainError("grid needs at least one variable");
    const double delta = polar_covering_radius(radial_steps, angular_steps);

    std::vector<Complex> ring(angular_steps);
    for (unsigned k = 0; k < angular_steps; ++k) {
        if (angle_offset == 0.0 && (4 * k) % angular_steps == 0) {
            // Quarter turns exactly, so that e.g. (1, 1) and (i, i) are sampled.
            static constexpr Complex quarter[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            ring[k] = quarter[(4 * k) / angular_steps];
        } else {
            ring[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / angular_steps + angle_offset);
        }
    }

    std::vector<Complex> axis;
    axis.reserve(1 + static_cast<std::size_t>(radial_steps - 1) * angular_steps);
    axis.emplace_back(0.0, 0.0);
    for (unsigned j = 1; j < radial_steps; ++j) {
        const double r = (j == radial_steps - 1) ? 1.0 : static_cast<double>(j) / (radial_steps - 1);
        for (const auto& w : ring)
            axis.push_back(r * w);
    }
    return PolydiscGrid(nvars, std::move(axis), delta, GridSpec{radial_steps, angular_steps});
}

PolydiscGrid make_grid(std::size_t nvars, const GridSpec& spec) {
    return make_grid(nvars, spec.radial, spec.angular);
}

}  // namespace chordal
