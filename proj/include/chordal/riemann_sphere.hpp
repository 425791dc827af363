#pragma once

#include <numbers>

#include "chordal/series.hpp"

namespace chordal {

/// A point of C u {inf}. Infinity is an explicit state, never an IEEE inf.
class ExtendedComplex {
public:
    ExtendedComplex(Complex value);  // NOLINT: implicit on purpose
    ExtendedComplex(double value) : ExtendedComplex(Complex(value)) {}  // NOLINT

    static ExtendedComplex infinity() noexcept;

    [[nodiscard]] bool is_infinite() const noexcept { return infinite_; }
    /// Finite value; throws DomainError at infinity.
    [[nodiscard]] Complex value() const;
    /// 1/z with 1/0 = inf and 1/inf = 0.
    [[nodiscard]] ExtendedComplex reciprocal() const;

    /// n/d, with d == 0 mapped to infinity (n must then be nonzero).
    static ExtendedComplex ratio(Complex num, Complex den);

    friend bool operator==(const ExtendedComplex&, const ExtendedComplex&) = default;

private:
    ExtendedComplex() = default;
    Complex value_{};
    bool infinite_ = false;
};

/// Point of the sphere of diameter 1 centred at (0, 0, 1/2).
struct SpherePoint {
    double x = 0.0;
    double y = 0.0;
    double h = 0.0;
};

/// Stereographic image: 0 is the south pole (0,0,0), inf the north pole (0,0,1).
SpherePoint stereographic(const ExtendedComplex& z);

double euclidean_distance(const SpherePoint& p, const SpherePoint& q);

/// |z1 - z2| / (sqrt(1+|z1|^2) sqrt(1+|z2|^2)); kappa(z, inf) = 1/sqrt(1+|z|^2).
double chordal(const ExtendedComplex& z1, const ExtendedComplex& z2);

/// Default cap radius a = 1/sqrt(2), for which all three coefficients are 1/3.
inline constexpr double kDefaultCapRadius = std::numbers::sqrt2 / 2.0;

/**
 * Lower bound on chordal(z1, z2) for finite z1, z2 and 0 < a < 1:
 *
 *   min{ a^2/(1+a^2) |z1 - z2|, a^2/(1+a^2) |1/z1 - 1/z2|, (1-a^2)/(1+a^2) }.
 *
 * The reciprocal term is dropped when z1 = z2 = 0 and is infinite when
 * exactly one argument is 0.
 */
double partington_bound(Complex z1, Complex z2, double a = kDefaultCapRadius);

}  // namespace chordal
