#pragma once

// Shared grid reduction used by every certified routine. Evaluates a handful
// of series at every grid point and reduces a scalar pointwise quantity to its
// max and min. The product structure of the grid is exploited: for each fixed
// prefix (z_1, ..., z_{n-1}) every series is collapsed to a univariate
// polynomial in z_n, which is then evaluated by Horner over the last axis.

#include <algorithm>
#include <array>
#include <cstddef>
#include <exception>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "chordal/errors.hpp"
#include "chordal/parallel.hpp"
#include "chordal/polydisc.hpp"
#include "chordal/series.hpp"

namespace chordal::detail {

struct Extrema {
    double max = -std::numeric_limits<double>::infinity();
    std::size_t argmax = 0;
    double min = std::numeric_limits<double>::infinity();
    std::size_t argmin = 0;

    void observe(double v, std::size_t index) noexcept {
        if (v > max) {
            max = v;
            argmax = index;
        }
        if (v < min) {
            min = v;
            argmin = index;
        }
    }

    // `later` covers strictly larger indices, so ties keep the earlier index.
    void merge(const Extrema& later) noexcept {
        if (later.max > max) {
            max = later.max;
            argmax = later.argmax;
        }
        if (later.min < min) {
            min = later.min;
            argmin = later.argmin;
        }
    }
};

inline constexpr std::size_t kMaxScanFunctions = 8;

template <class Pointwise>
Extrema scan_extrema(const PolydiscGrid& grid, std::span<const Series> fns, Pointwise&& pointwise) {
    const std::size_t nvars = grid.nvars();
    const std::size_t nfns = fns.size();
    if (nfns == 0 || nfns > kMaxScanFunctions)
        throw DomainError("scan_extrema: between 1 and 8 series expected");
    for (const auto& f : fns)
        if (f.nvars() != nvars)
            throw DimensionError("series and grid have different numbers of variables");

    const auto axis = grid.axis();
    const std::size_t na = axis.size();
    const std::size_t last = nvars - 1;

    unsigned max_prefix_degree = 0;
    std::vector<unsigned> last_degree(nfns);
    for (std::size_t k = 0; k < nfns; ++k) {
        for (std::size_t v = 0; v < last; ++v)
            max_prefix_degree = std::max(max_prefix_degree, fns[k].degree(v));
        last_degree[k] = fns[k].degree(last);
    }

    // powers[a * (max_prefix_degree + 1) + e] = axis[a]^e
    const std::size_t stride = max_prefix_degree + 1;
    std::vector<Complex> powers(na * stride);
    for (std::size_t a = 0; a < na; ++a) {
        Complex p = 1.0;
        for (std::size_t e = 0; e < stride; ++e) {
            powers[a * stride + e] = p;
            p *= axis[a];
        }
    }

    std::size_t outer = 1;
    for (std::size_t v = 0; v < last; ++v)
        outer *= na;

    auto scan_range = [&](std::size_t begin, std::size_t end, Extrema& out) {
        std::vector<std::vector<Complex>> coeffs(nfns);
        for (std::size_t k = 0; k < nfns; ++k)
            coeffs[k].resize(last_degree[k] + 1);
        std::vector<std::size_t> digits(last);
        std::array<Complex, kMaxScanFunctions> values{};

        for (std::size_t o = begin; o < end; ++o) {
            std::size_t rem = o;
            for (std::size_t v = last; v-- > 0;) {
                digits[v] = rem % na;
                rem /= na;
            }
            for (std::size_t k = 0; k < nfns; ++k) {
                std::fill(coeffs[k].begin(), coeffs[k].end(), Complex{});
                for (const auto& [exp, c] : fns[k].terms()) {
                    Complex t = c;
                    for (std::size_t v = 0; v < last; ++v)
                        t *= powers[digits[v] * stride + exp[v]];
                    coeffs[k][exp[last]] += t;
                }
            }
            const std::size_t base = o * na;
            for (std::size_t j = 0; j < na; ++j) {
                const Complex z = axis[j];
                for (std::size_t k = 0; k < nfns; ++k) {
                    const auto& c = coeffs[k];
                    Complex acc = c.back();
                    for (std::size_t e = c.size() - 1; e-- > 0;)
                        acc = acc * z + c[e];
                    values[k] = acc;
                }
                out.observe(pointwise(std::span<const Complex>(values.data(), nfns)), base + j);
            }
        }
    };

    const std::size_t workers = std::min(thread_count(), outer);
    if (workers <= 1) {
        Extrema result;
        scan_range(0, outer, result);
        return result;
    }

    std::vector<Extrema> partial(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = outer * w / workers;
        const std::size_t end = outer * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                scan_range(begin, end, partial[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    Extrema result = partial.front();
    for (std::size_t w = 1; w < workers; ++w)
        result.merge(partial[w]);
    return result;
}

}  // namespace chordal::detail
