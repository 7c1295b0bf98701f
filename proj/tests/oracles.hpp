#pragma once

// Independent numerical oracles used by the tests. Everything here is
// deliberately naive (midpoint Riemann sums, brute-force enumeration) and
// shares no code with the closed forms it cross-checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "covloc/cmatrix.hpp"
#include "covloc/phase_matrix.hpp"
#include "covloc/torus.hpp"
#include "covloc/types.hpp"

namespace oracles {

using covloc::ArcSet;
using covloc::CMatrix;
using covloc::cplx;
using covloc::PhaseMatrix;
using covloc::two_pi;

// Midpoint Riemann sum of (1/2pi) int_X e^{i q t} dt with about
// total_points points spread over the arcs proportionally to length.
inline cplx kernel_riemann(const ArcSet& x, int q, std::size_t total_points) {
    cplx sum{0.0, 0.0};
    for (const covloc::Arc& arc : x.arcs()) {
        const auto m = std::max<std::size_t>(
            1, static_cast<std::size_t>(
                   std::llround(static_cast<double>(total_points) * arc.length / two_pi)));
        const double h = arc.length / static_cast<double>(m);
        for (std::size_t j = 0; j < m; ++j) {
            const double t = arc.start + (static_cast<double>(j) + 0.5) * h;
            sum += std::polar(1.0, static_cast<double>(q) * t) * h;
        }
    }
    return sum / two_pi;
}

// Midpoint Riemann sum of (1/2pi) int_0^{2pi} f(t) e^{i q t} dt.
inline cplx weighted_moment_quadrature(int q, const std::function<double(double)>& f,
                                       std::size_t points) {
    const double h = two_pi / static_cast<double>(points);
    cplx sum{0.0, 0.0};
    for (std::size_t j = 0; j < points; ++j) {
        const double t = (static_cast<double>(j) + 0.5) * h;
        sum += f(t) * std::polar(1.0, static_cast<double>(q) * t) * h;
    }
    return sum / two_pi;
}

// Quadrature build of int f(theta) dE: entries c_{n,m} * Q(m - n) with
// Q the Riemann sum above. The arbiter for moment-formula conventions.
inline CMatrix moment_quadrature(const PhaseMatrix& c,
                                 const std::function<double(double)>& f,
                                 std::size_t points) {
    const int dim = c.window().dim();
    std::vector<cplx> q_values(static_cast<std::size_t>(2 * dim - 1));
    for (int q = -(dim - 1); q <= dim - 1; ++q)
        q_values[static_cast<std::size_t>(q + dim - 1)] =
            weighted_moment_quadrature(q, f, points);
    CMatrix m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                c.entries()(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
                q_values[static_cast<std::size_t>(j - i + dim - 1)];
    return m;
}

// Kolmogorov-Smirnov statistic of samples against a CDF on [0, 2pi).
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

} // namespace oracles
