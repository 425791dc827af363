#pragma once

#include <string_view>

#include "chordal/polydisc.hpp"
#include "chordal/series.hpp"

namespace chordal {

enum class BoundKind { Supremum, InfimumModulus };

/// Interval [lo, hi] known to contain a supremum or an infimum of modulus
/// over the closed polydisc.
struct CertifiedBound {
    double lo = 0.0;
    double hi = 0.0;
    BoundKind kind = BoundKind::Supremum;
    double grid_delta = 0.0;
    double lipschitz = 0.0;

    [[nodiscard]] double width() const noexcept { return hi - lo; }
    [[nodiscard]] bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

/// Three-valued outcome. Grid inconclusiveness is never turned into yes/no.
enum class Status { Proved, Disproved, Inconclusive };

std::string_view to_string(Status status);

struct Certificate {
    Status status = Status::Inconclusive;
    CertifiedBound evidence;

    [[nodiscard]] bool proved() const noexcept { return status == Status::Proved; }
};

/// Grid values below this count as sampled zeros.
inline constexpr double kSampledZero = 1e-14;

/**
 * Enclosure of ||f||_inf over the closed polydisc.
 *
 * lo is the grid maximum of |f|. hi is lo + L(f) delta, tightened to
 * ||f||_1 when that is smaller (|f(z)| <= ||f||_1 on the polydisc). Both
 * are capped at ||f||_1, which absorbs evaluation rounding at points where
 * |f| attains it.
 */
CertifiedBound sup_norm_certified(const Series& f, const PolydiscGrid& grid);

/**
 * Enclosure of min |f| over the closed polydisc.
 *
 * hi is the grid minimum of |f|. lo is max(0, hi - L(f) delta), raised to
 * |f(0)| - ||f - f(0)||_1 when that is larger.
 */
CertifiedBound min_modulus_certified(const Series& f, const PolydiscGrid& grid);

/// Proved if the certified min modulus is positive, Disproved if a grid value
/// is below kSampledZero, Inconclusive otherwise.
Certificate is_invertible(const Series& f, const PolydiscGrid& grid);

/// Same decision rule applied to an already computed min-modulus enclosure.
Certificate invertibility_from(const CertifiedBound& min_modulus);

}  // namespace chordal
