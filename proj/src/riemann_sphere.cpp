#include "chordal/riemann_sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chordal/errors.hpp"

namespace chordal {

ExtendedComplex::ExtendedComplex(Complex value) : value_(value) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw DomainError("use ExtendedComplex::infinity() for the point at infinity");
}

ExtendedComplex ExtendedComplex::infinity() noexcept {
    ExtendedComplex z;
    z.infinite_ = true;
    return z;
}

Complex ExtendedComplex::value() const {
    if (infinite_)
        throw DomainError("the point at infinity has no finite value");
    return value_;
}

ExtendedComplex ExtendedComplex::reciprocal() const {
    if (infinite_)
        return ExtendedComplex(0.0);
    if (value_ == Complex{})
        return infinity();
    return ExtendedComplex(1.0 / value_);
}

ExtendedComplex ExtendedComplex::ratio(Complex num, Complex den) {
    if (den == Complex{}) {
        if (num == Complex{})
            throw DomainError("0/0 is not a point of the extended plane");
        return infinity();
    }
    return ExtendedComplex(num / den);
}

SpherePoint stereographic(const ExtendedComplex& z) {
    if (z.is_infinite())
        return {0.0, 0.0, 1.0};
    const Complex w = z.value();
    const double m2 = std::norm(w);
    const double scale = 1.0 / (1.0 + m2);
    return {w.real() * scale, w.imag() * scale, m2 * scale};
}

double euclidean_distance(const SpherePoint& p, const SpherePoint& q) {
    return std::hypot(p.x - q.x, p.y - q.y, p.h - q.h);
}

double chordal(const ExtendedComplex& z1, const ExtendedComplex& z2) {
    if (z1.is_infinite() && z2.is_infinite())
        return 0.0;
    if (z1.is_infinite())
        return 1.0 / std::hypot(1.0, std::abs(z2.value()));
    if (z2.is_infinite())
        return 1.0 / std::hypot(1.0, std::abs(z1.value()));
    const Complex a = z1.value();
    const Complex b = z2.value();
    const double d = std::abs(a - b) / (std::hypot(1.0, std::abs(a)) * std::hypot(1.0, std::abs(b)));
    return std::min(d, 1.0);
}

double partington_bound(Complex z1, Complex z2, double a) {
    if (!(a > 0.0 && a < 1.0))
        throw DomainError("cap radius a must lie in (0, 1)");
    const double a2 = a * a;
    const double c = a2 / (1.0 + a2);
    const double direct = c * std::abs(z1 - z2);
    const double cap = (1.0 - a2) / (1.0 + a2);

    const bool zero1 = z1 == Complex{};
    const bool zero2 = z2 == Complex{};
    double inverted = std::numeric_limits<double>::infinity();
    if (!zero1 && !zero2)
        inverted = c * std::abs(1.0 / z1 - 1.0 / z2);
    return std::min({direct, inverted, cap});
}

}  // namespace chordal
