#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chordal/series.hpp"

namespace chordal {

/// Slack allowed on |z_i| <= 1 for points of the closed polydisc.
inline constexpr double kPolydiscTolerance = 1e-12;

/// A point of the closed polydisc, i.e. a character of the polydisc algebra.
class PolydiscPoint {
public:
    explicit PolydiscPoint(std::vector<Complex> coords);
    PolydiscPoint(std::initializer_list<Complex> coords);

    [[nodiscard]] std::size_t nvars() const noexcept { return coords_.size(); }
    [[nodiscard]] std::span<const Complex> coords() const noexcept { return coords_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return coords_[i]; }

    friend bool operator==(const PolydiscPoint&, const PolydiscPoint&) = default;

private:
    std::vector<Complex> coords_;
};

/// rho(z, w) = max_i |z_i - w_i|.
double polydisc_distance(const PolydiscPoint& z, const PolydiscPoint& w);

/// Grid resolution as given on the command line.
struct GridSpec {
    unsigned radial = 21;
    unsigned angular = 126;

    [[nodiscard]] GridSpec refined(unsigned factor) const {
        return {(radial - 1) * factor + 1, angular * factor};
    }
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/**
 * @brief Cartesian product of one polar sample set per coordinate.
 *
 * The axis set is {0} together with the rings r_j = j/(radial-1),
 * j = 1..radial-1, each carrying `angular` equally spaced angles (shifted by
 * an optional common offset). Points are enumerated lexicographically with
 * coordinate 0 varying slowest.
 */
class PolydiscGrid {
public:
    PolydiscGrid(std::size_t nvars, std::vector<Complex> axis, double covering_radius,
                 GridSpec spec);

    [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
    [[nodiscard]] std::span<const Complex> axis() const noexcept { return axis_; }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] double covering_radius() const noexcept { return covering_radius_; }
    [[nodiscard]] const GridSpec& spec() const noexcept { return spec_; }

    [[nodiscard]] PolydiscPoint point(std::size_t index) const;
    /// Materializes every point; only sensible for small grids.
    [[nodiscard]] std::vector<PolydiscPoint> points() const;

private:
    std::size_t nvars_;
    std::vector<Complex> axis_;
    double covering_radius_;
    GridSpec spec_;
    std::size_t size_;
};

/**
 * Covering radius of the single-coordinate polar sample set.
 *
 * A point at radius r between consecutive rings a < b and angular offset at
 * most pi/angular from the nearest sampled ray sits at squared distance
 * f_c(r) = (r - c)^2 + 4 r c sin^2(pi / (2 angular)) from the ray sample on
 * ring c. f_a is increasing on [a, b] and f_b is convex, and the two cross at
 * r* = (a + b) / (2 cos(pi / angular)), so max_r min(f_a, f_b) is attained at
 * r = a, r = b or r = clamp(r*). The covering radius is the largest such
 * value over all annuli. The product grid inherits it in the max-metric rho.
 */
double polar_covering_radius(unsigned radial_steps, unsigned angular_steps);

/// Requires radial_steps >= 2 and angular_steps >= 4.
PolydiscGrid make_grid(std::size_t nvars, unsigned radial_steps, unsigned angular_steps,
                       double angle_offset = 0.0);
PolydiscGrid make_grid(std::size_t nvars, const GridSpec& spec);

}  // namespace chordal
