#include "covloc/observable.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covloc/rng.hpp"

namespace covloc {

namespace {

void require_valid(const PhaseMatrix& c, const Tolerances& tol) {
    const ValidationReport rep = validate(c, tol);
    if (!rep.is_valid)
        throw validation_error("phase matrix failed validation (min eigenvalue " +
                               std::to_string(rep.min_eigenvalue) + ", max modulus " +
                               std::to_string(rep.max_modulus) + ")");
}

// Kernel values for every offset q = m - n reachable on the window.
std::vector<cplx> kernel_row(const ArcSet& x, int dim) {
    std::vector<cplx> k(2 * dim - 1);
    for (int q = -(dim - 1); q <= dim - 1; ++q)
        k[static_cast<std::size_t>(q + dim - 1)] = kernel_integral(x, q);
    return k;
}

CMatrix effect_entries(const PhaseMatrix& c, const ArcSet& x) {
    const int dim = c.window().dim();
    const std::vector<cplx> kernel = kernel_row(x, dim);
    CMatrix e(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            e(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                c.entries()(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
                kernel[static_cast<std::size_t>(j - i + dim - 1)];
    return e;
}

} // namespace

StateVector::StateVector(IndexWindow window, std::vector<cplx> amplitudes)
    : window_(window), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != static_cast<std::size_t>(window_.dim()))
        throw input_error("StateVector: amplitude count does not match window");
    double norm2 = 0.0;
    for (const cplx& z : amplitudes_) norm2 += std::norm(z);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
        throw input_error("StateVector: amplitudes not unit norm");
}

StateVector StateVector::basis(IndexWindow window, int n) {
    if (!window.contains(n))
        throw input_error("StateVector::basis: index outside window");
    std::vector<cplx> amps(static_cast<std::size_t>(window.dim()), cplx{0.0, 0.0});
    amps[window.offset(n)] = 1.0;
    return StateVector(window, std::move(amps));
}

StateVector StateVector::uniform_superposition(IndexWindow window) {
    const auto d = static_cast<std::size_t>(window.dim());
    std::vector<cplx> amps(d, cplx{1.0 / std::sqrt(static_cast<double>(d)), 0.0});
    return StateVector(window, std::move(amps));
}

StateVector StateVector::normalized(IndexWindow window, std::vector<cplx> amplitudes) {
    double norm2 = 0.0;
    for (const cplx& z : amplitudes) norm2 += std::norm(z);
    if (norm2 <= 0.0)
        throw input_error("StateVector::normalized: zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& z : amplitudes) z *= inv;
    return StateVector(window, std::move(amplitudes));
}

EffectMatrix effect_matrix(const PhaseMatrix& c, const ArcSet& x, const Tolerances& tol) {
    require_valid(c, tol);
    return EffectMatrix{c.window(), x, effect_entries(c, x)};
}

double probability(const PhaseMatrix& c, const StateVector& psi, const ArcSet& x,
                   const Tolerances& tol) {
    if (!(c.window() == psi.window()))
        throw input_error("probability: window mismatch between matrix and state");
    require_valid(c, tol);
    const CMatrix e = effect_entries(c, x);
    const std::vector<cplx> w = e.apply(psi.amplitudes());
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < w.size(); ++i)
        s += std::conj(psi.amplitudes()[i]) * w[i];
    return s.real();
}

double density(const PhaseMatrix& c, const StateVector& psi, double theta) {
    if (!(c.window() == psi.window()))
        throw input_error("density: window mismatch between matrix and state");
    const int dim = c.window().dim();
    std::vector<cplx> v(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i)
        v[static_cast<std::size_t>(i)] =
            psi.amplitudes()[static_cast<std::size_t>(i)] *
            std::polar(1.0, static_cast<double>(c.window().index_at(
                                static_cast<std::size_t>(i))) * theta);
    cplx s{0.0, 0.0};
    for (int i = 0; i < dim; ++i) {
        cplx row{0.0, 0.0};
        for (int j = 0; j < dim; ++j)
            row += c.entries()(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
                   v[static_cast<std::size_t>(j)];
        s += std::conj(v[static_cast<std::size_t>(i)]) * row;
    }
    return s.real() / two_pi;
}

std::vector<cplx> rotation_phases(IndexWindow window, double theta) {
    std::vector<cplx> u(static_cast<std::size_t>(window.dim()));
    for (int i = 0; i < window.dim(); ++i)
        u[static_cast<std::size_t>(i)] = std::polar(
            1.0, -static_cast<double>(window.index_at(static_cast<std::size_t>(i))) * theta);
    return u;
}

double covariance_check(const PhaseMatrix& c, const ArcSet& x, double theta,
                        const Tolerances& tol) {
    require_valid(c, tol);
    const CMatrix ex = effect_entries(c, x);
    const CMatrix shifted = effect_entries(c, rotate(x, theta));
    const std::vector<cplx> u = rotation_phases(c.window(), theta);
    const std::size_t n = ex.rows();
    double dev2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dev2 += std::norm(u[i] * ex(i, j) * std::conj(u[j]) - shifted(i, j));
    return std::sqrt(dev2);
}

double additivity_check(const PhaseMatrix& c, const ArcSet& x, const ArcSet& y,
                        const Tolerances& tol) {
    if (!disjoint(x, y))
        throw input_error("additivity_check: arc sets are not disjoint");
    require_valid(c, tol);
    CMatrix d = effect_entries(c, set_union(x, y));
    d -= effect_entries(c, x);
    d -= effect_entries(c, y);
    return d.frobenius_norm();
}

std::vector<double> sample(const PhaseMatrix& c, const StateVector& psi,
                           std::size_t count, std::uint64_t seed, std::size_t grid) {
    if (count < 1) throw input_error("sample: count must be >= 1");
    if (grid < 16) throw input_error("sample: grid too coarse");
    require_valid(c, Tolerances{});

    // Cumulative trapezoid of the density over [0, 2*pi], normalized so the
    // last knot is exactly 1.
    const double h = two_pi / static_cast<double>(grid);
    std::vector<double> p(grid + 1);
    for (std::size_t j = 0; j <= grid; ++j)
        p[j] = std::max(density(c, psi, static_cast<double>(j) * h), 0.0);
    std::vector<double> cdf(grid + 1, 0.0);
    for (std::size_t j = 1; j <= grid; ++j)
        cdf[j] = cdf[j - 1] + 0.5 * (p[j - 1] + p[j]) * h;
    const double total = cdf[grid];
    if (total <= 0.0)
        throw validation_error("sample: density integrates to zero");
    for (double& f : cdf) f /= total;

    Rng rng(seed);
    std::vector<double> draws(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t hi = std::min(
            static_cast<std::size_t>(std::distance(cdf.begin(), it)), grid);
        const std::size_t lo = hi - 1;
        const double df = cdf[hi] - cdf[lo];
        const double frac = df > 0.0 ? (u - cdf[lo]) / df : 0.0;
        draws[i] = (static_cast<double>(lo) + frac) * h;
    }
    return draws;
}

} // namespace covloc
