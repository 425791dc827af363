#pragma once

#include <array>
#include <optional>

#include "chordal/certified.hpp"
#include "chordal/polydisc.hpp"
#include "chordal/series.hpp"

namespace chordal {

/// Bezout witnesses (x, y) with n x + d y = 1.
struct BezoutWitness {
    Series x;
    Series y;
};

inline constexpr double kDefaultBezoutTolerance = 1e-9;

/// How coprimeness of (n, d) was established.
enum class CoprimeEvidence { Witnesses, NoCommonZero };

/**
 * @brief A plant p = n/d with a validated coprime factorization over R.
 *
 * Only make_plant constructs these. Besides the factors the plant carries
 * `floor`, a certified positive lower bound on sqrt(|n|^2 + |d|^2) over the
 * closed polydisc, which the chordal-metric certification relies on.
 */
class CoprimePlant {
public:
    [[nodiscard]] const Series& num() const noexcept { return num_; }
    [[nodiscard]] const Series& den() const noexcept { return den_; }
    [[nodiscard]] const std::optional<BezoutWitness>& witnesses() const noexcept { return witnesses_; }
    [[nodiscard]] std::size_t nvars() const noexcept { return num_.nvars(); }

    [[nodiscard]] CoprimeEvidence evidence() const noexcept { return evidence_; }
    /// ||n x + d y - 1||_1 when witnesses are present, 0 otherwise.
    [[nodiscard]] double bezout_residual() const noexcept { return bezout_residual_; }
    /// Certified lower bound on min(|n| + |d|) when established on a grid.
    [[nodiscard]] const std::optional<CertifiedBound>& no_common_zero() const noexcept {
        return no_common_zero_;
    }
    /// Certified lower bound beta on sqrt(|n|^2 + |d|^2) over the polydisc.
    [[nodiscard]] double floor() const noexcept { return floor_; }

private:
    CoprimePlant(Series num, Series den) : num_(std::move(num)), den_(std::move(den)) {}

    friend CoprimePlant make_plant(Series, Series, std::optional<BezoutWitness>,
                                   const PolydiscGrid&, double);

    Series num_;
    Series den_;
    std::optional<BezoutWitness> witnesses_;
    CoprimeEvidence evidence_ = CoprimeEvidence::Witnesses;
    double bezout_residual_ = 0.0;
    std::optional<CertifiedBound> no_common_zero_;
    double floor_ = 0.0;
};

/**
 * Validates n/d as a coprime factorization.
 *
 * With witnesses, ||n x + d y - 1||_1 must not exceed `bezout_tolerance` and
 * the floor is (1 - residual) / sqrt(||x||_1^2 + ||y||_1^2) by Cauchy-Schwarz.
 * Without witnesses, min(|n| + |d|) over the polydisc must be certified
 * positive on `grid`; the floor is then that certified minimum over sqrt(2).
 *
 * Throws DimensionError, CoprimenessError (zero denominator, residual too
 * large, common zero, inconclusive at this grid).
 */
CoprimePlant make_plant(Series num, Series den, std::optional<BezoutWitness> witnesses,
                        const PolydiscGrid& grid,
                        double bezout_tolerance = kDefaultBezoutTolerance);

/**
 * Witnesses for (n, d) obtained from witnesses (x0, y0) of a nearby pair.
 *
 * u = n x0 + d y0 is inverted by a Neumann series h and (x0 h, y0 h) is
 * returned. Empty when u is not Neumann-invertible or the truncation would
 * be too large to be useful.
 */
std::optional<BezoutWitness> transfer_witnesses(const Series& num, const Series& den,
                                                const BezoutWitness& nearby);

/// d - n c. Its invertibility in R is equivalent to c stabilizing n/d.
Series loop_denominator(const CoprimePlant& plant, const Series& controller);

/// One entry of H(p, c), always available as numerator / (d - n c).
struct ClosedLoopEntry {
    Series numerator;
    /// numerator * (d - n c)^{-1} truncated, when materialized.
    std::optional<Series> materialized;
    /// Bound on ||entry - materialized||_1.
    double error_bound = 0.0;
};

/**
 * @brief H(p, c) in fraction form over the common denominator d - n c.
 *
 *   p/(1-pc)  = n/(d-nc)     pc/(1-pc) = nc/(d-nc)
 *   pc/(1-pc) = nc/(d-nc)    c/(1-pc)  = cd/(d-nc)
 *
 * `sensitivity` is 1/(1-pc) = d/(d-nc).
 */
struct ClosedLoop {
    Series denominator;
    std::array<std::array<ClosedLoopEntry, 2>, 2> entries;
    ClosedLoopEntry sensitivity;
    Certificate stable;
    std::optional<NeumannInverse> inverse;
};

/// Certifies invertibility of d - n c and, when Proved and the Neumann
/// condition holds, materializes every entry as a truncated series.
ClosedLoop closed_loop(const CoprimePlant& plant, const Series& controller, const PolydiscGrid& grid);

/// Same certificate as closed_loop(...).stable, without materializing entries.
Certificate is_stabilized_by(const CoprimePlant& plant, const Series& controller,
                             const PolydiscGrid& grid);

}  // namespace chordal
