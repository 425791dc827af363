#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

namespace chordal {

using Complex = std::complex<double>;

/// Multi-index (k_1, ..., k_n) of a monomial z_1^k_1 ... z_n^k_n.
using Exponent = std::vector<unsigned>;

/// Coefficients with modulus below this are dropped during canonicalization.
inline constexpr double kCoefficientFloor = 1e-15;

class PolydiscPoint;

/**
 * @brief Finitely supported power series in `nvars` complex variables.
 *
 * Stands in for an element of the Wiener algebra W^1 of the polydisc. The
 * term map is kept canonical: every exponent has length nvars and no stored
 * coefficient has modulus below kCoefficientFloor.
 */
class Series {
public:
    using TermMap = std::map<Exponent, Complex>;

    /// The zero series in `nvars` variables.
    explicit Series(std::size_t nvars);

    /// Validates exponent lengths and canonicalizes `terms`.
    Series(std::size_t nvars, TermMap terms);

    static Series constant(std::size_t nvars, Complex value);
    static Series monomial(std::size_t nvars, Exponent exponent, Complex coefficient = 1.0);
    /// z_var (1-based names aside, `var` is a 0-based index).
    static Series variable(std::size_t nvars, std::size_t var);

    [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
    [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

    /// Coefficient of z^0, i.e. the value at the origin.
    [[nodiscard]] Complex constant_term() const;
    [[nodiscard]] Complex coefficient(const Exponent& exponent) const;

    /// Largest exponent of variable `var` over all terms (0 for the zero series).
    [[nodiscard]] unsigned degree(std::size_t var) const;

    friend bool operator==(const Series&, const Series&) = default;

private:
    std::size_t nvars_;
    TermMap terms_;
};

Series series_add(const Series& a, const Series& b);
Series series_mul(const Series& a, const Series& b);

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator-(const Series& a);
Series operator*(const Series& a, const Series& b);
Series operator*(Complex scale, const Series& a);
Series operator*(const Series& a, Complex scale);

/// Sum of coefficient moduli.
double l1_norm(const Series& f);

/// Gelfand transform at a point of the closed polydisc: plain evaluation.
Complex gelfand_eval(const Series& f, const PolydiscPoint& point);

/// L(f) = sum_k |a_k| (k_1 + ... + k_n). For z, w in the closed polydisc,
/// |f(z) - f(w)| <= L(f) * max_i |z_i - w_i|.
double lipschitz_constant(const Series& f);

/// Bound on the floating-point error of evaluating f anywhere on the closed
/// polydisc: 16 eps (deg_1 + ... + deg_n) ||f||_1. Zero for constants.
double evaluation_allowance(const Series& f);

/// Truncated Neumann-series inverse together with its error bookkeeping.
///
/// With f = f(0) (1 - u), r = ||u||_1 < 1 and g = f(0)^{-1} sum_{j=0}^{m} u^j we
/// have f g - 1 = -u^{m+1}, hence ||f g - 1||_1 <= r^{m+1}, and
/// ||f^{-1} - g||_1 <= |f(0)|^{-1} r^{m+1} / (1 - r). Both reported bounds
/// include a small floating-point allowance.
struct NeumannInverse {
    Series inverse;
    unsigned terms = 0;              ///< m, the highest power of u kept
    double contraction = 0.0;        ///< r
    double residual_bound = 0.0;     ///< r^{m+1}
    double residual = 0.0;           ///< ||f g - 1||_1 as computed
    double inverse_error_bound = 0.0;///< bound on ||f^{-1} - g||_1
};

/// Throws NotNeumannInvertible when f(0) == 0 or ||1 - f/f(0)||_1 >= 1.
NeumannInverse neumann_inverse(const Series& f, unsigned max_terms);

/// Smallest m with r^{m+1} <= target, capped at `cap`.
unsigned neumann_terms_for(double contraction, double target, unsigned cap = 400);

}  // namespace chordal
