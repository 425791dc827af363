#include "chordal/series.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "chordal/errors.hpp"
#include "chordal/polydisc.hpp"

namespace chordal {
namespace {

void canonicalize(Series::TermMap& terms) {
    std::erase_if(terms, [](const auto& kv) { return std::abs(kv.second) < kCoefficientFloor; });
}

void require_same_nvars(const Series& a, const Series& b) {
    if (a.nvars() != b.nvars())
        throw DimensionError("series in " + std::to_string(a.nvars()) + " and " +
                             std::to_string(b.nvars()) + " variables");
}

}  // namespace

Series::Series(std::size_t nvars) : nvars_(nvars) {
    if (nvars == 0)
        throw DomainError("a series needs at least one variable");
}

Series::Series(std::size_t nvars, TermMap terms) : Series(nvars) {
    for (const auto& [exp, c] : terms) {
        if (exp.size() != nvars)
            throw DimensionError("exponent of length " + std::to_string(exp.size()) + " in a series of " +
                                 std::to_string(nvars) + " variables");
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw DomainError("non-finite series coefficient");
    }
    terms_ = std::move(terms);
    canonicalize(terms_);
}

Series Series::constant(std::size_t nvars, Complex value) {
    return monomial(nvars, Exponent(nvars, 0u), value);
}

Series Series::monomial(std::size_t nvars, Exponent exponent, Complex coefficient) {
    TermMap t;
    t.emplace(std::move(exponent), coefficient);
    return Series(nvars, std::move(t));
}

Series Series::variable(std::size_t nvars, std::size_t var) {
    if (var >= nvars)
        throw DimensionError("variable index out of range");
    Exponent e(nvars, 0u);
    e[var] = 1;
    return monomial(nvars, std::move(e));
}

Complex Series::constant_term() const { return coefficient(Exponent(nvars_, 0u)); }

Complex Series::coefficient(const Exponent& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Complex{} : it->second;
}

unsigned Series::degree(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [exp, c] : terms_)
        d = std::max(d, exp[var]);
    return d;
}

Series series_add(const Series& a, const Series& b) {
    require_same_nvars(a, b);
    Series::TermMap t = a.terms();
    for (const auto& [exp, c] : b.terms())
        t[exp] += c;
    return Series(a.nvars(), std::move(t));
}

Series series_mul(const Series& a, const Series& b) {
    require_same_nvars(a, b);
    Series::TermMap t;
    Exponent e(a.nvars());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            t[e] += ca * cb;
        }
    }
    return Series(a.nvars(), std::move(t));
}

Series operator+(const Series& a, const Series& b) { return series_add(a, b); }
Series operator-(const Series& a, const Series& b) { return series_add(a, -b); }
Series operator*(const Series& a, const Series& b) { return series_mul(a, b); }

Series operator-(const Series& a) { return Complex(-1.0) * a; }

Series operator*(Complex scale, const Series& a) {
    Series::TermMap t = a.terms();
    for (auto& [exp, c] : t)
        c *= scale;
    return Series(a.nvars(), std::move(t));
}

Series operator*(const Series& a, Complex scale) { return scale * a; }

double l1_norm(const Series& f) {
    double s = 0.0;
    for (const auto& [exp, c] : f.terms())
        s += std::abs(c);
    return s;
}

Complex gelfand_eval(const Series& f, const PolydiscPoint& point) {
    if (f.nvars() != point.nvars())
        throw DimensionError("series in " + std::to_string(f.nvars()) + " variables evaluated at a point of " +
                             std::to_string(point.nvars()));
    Complex sum{};
    for (const auto& [exp, c] : f.terms()) {
        Complex t = c;
        for (std::size_t i = 0; i < exp.size(); ++i)
            for (unsigned k = 0; k < exp[i]; ++k)
                t *= point[i];
        sum += t;
    }
    return sum;
}

double evaluation_allowance(const Series& f) {
    double degree = 0.0;
    for (std::size_t v = 0; v < f.nvars(); ++v)
        degree += f.degree(v);
    return 16.0 * std::numeric_limits<double>::epsilon() * degree * l1_norm(f);
}

double lipschitz_constant(const Series& f) {
    double s = 0.0;
    for (const auto& [exp, c] : f.terms())
        s += std::abs(c) * std::accumulate(exp.begin(), exp.end(), 0.0);
    return s;
}

unsigned neumann_terms_for(double contraction, double target, unsigned cap) {
    if (contraction <= 0.0)
        return 0;
    if (contraction >= 1.0)
        return cap;
    // r^{m+1} <= target  <=>  m + 1 >= log(target) / log(r)
    const double need = std::ceil(std::log(target) / std::log(contraction)) - 1.0;
    if (need <= 0.0)
        return 0;
    return need >= cap ? cap : static_cast<unsigned>(need);
}

NeumannInverse neumann_inverse(const Series& f, unsigned max_terms) {
    const Complex f0 = f.constant_term();
    if (f0 == Complex{})
        throw NotNeumannInvertible("not Neumann-invertible: f(0) = 0");
    const std::size_t n = f.nvars();
    const Series one = Series::constant(n, 1.0);
    const Series u = one - (1.0 / f0) * f;
    const double r = l1_norm(u);
    if (r >= 1.0)
        throw NotNeumannInvertible("not Neumann-invertible: ||1 - f/f(0)||_1 = " + format_real(r) + " >= 1");

    Series sum = one;
    Series power = one;
    for (unsigned j = 1; j <= max_terms; ++j) {
        power = power * u;
        if (power.is_zero())
            break;
        sum = sum + power;
    }

    NeumannInverse out{(1.0 / f0) * sum, max_terms, r, 0.0, 0.0, 0.0};
    // Floating-point allowance for the convolutions and dropped coefficients.
    const double roundoff = 8.0 * std::numeric_limits<double>::epsilon() * (max_terms + 2.0) *
                            (1.0 + l1_norm(f) * l1_norm(out.inverse));
    out.residual_bound = std::pow(r, static_cast<double>(max_terms) + 1.0) + roundoff;
    out.inverse_error_bound = out.residual_bound / (1.0 - r) / std::abs(f0);
    out.residual = l1_norm(f * out.inverse - one);
    return out;
}

}  // namespace chordal
