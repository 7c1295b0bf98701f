#include "covloc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "covloc/observable.hpp"

namespace covloc {

CommutativityReport check_commutative_criterion(const PhaseMatrix& c, double tol) {
    const IndexWindow& w = c.window();
    CommutativityReport report;
    for (int n = w.lo; n <= w.hi; ++n) {
        for (int m = w.lo; m <= w.hi; ++m) {
            // k constrained so n+k and m-k also lie inside the window
            const int kmin = std::max(w.lo - n, m - w.hi);
            const int kmax = std::min(w.hi - n, m - w.lo);
            for (int k = kmin; k <= kmax; ++k) {
                const cplx lhs = c.at(n, n + k) * c.at(n + k, m);
                const cplx rhs = c.at(n, m - k) * c.at(m - k, m);
                const double dev = std::abs(lhs - rhs);
                if (dev > report.max_violation) report.max_violation = dev;
                if (dev > tol) {
                    report.commutative = false;
                    if (report.witnesses.size() < 16)
                        report.witnesses.push_back({n, m, k, lhs, rhs});
                }
            }
        }
    }
    return report;
}

int default_margin(const IndexWindow& window) { return window.dim() / 4; }

double central_block_frobenius(const CMatrix& m, int margin) {
    if (margin < 0 || 2 * static_cast<std::size_t>(margin) >= m.rows())
        throw input_error("central_block_frobenius: margin too large");
    const auto off = static_cast<std::size_t>(margin);
    return m.block(off, off, m.rows() - 2 * off, m.cols() - 2 * off)
        .frobenius_norm();
}

double commutator_norm(const PhaseMatrix& c, const ArcSet& x, const ArcSet& y,
                       int margin) {
    if (margin < 0 || 2 * margin >= c.window().dim())
        throw input_error("commutator_norm: margin must satisfy 0 <= 2*margin < dim");
    const CMatrix ex = effect_matrix(c, x).entries;
    const CMatrix ey = effect_matrix(c, y).entries;
    return central_block_frobenius(ex * ey - ey * ex, margin);
}

bool check_projection_valued(const PhaseMatrix& c, double tol) {
    const CMatrix& m = c.entries();
    double dev = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            dev = std::max(dev, std::abs(1.0 - std::abs(m(i, j))));
    return dev <= tol;
}

PvDiagonalResult pv_diagonal_test(const PhaseMatrix& c, double x, int n) {
    if (!(x > 0.0 && x < 1.0))
        throw input_error("pv_diagonal_test: x must lie in (0,1)");
    const IndexWindow& w = c.window();
    const int guard = w.dim() / 4;
    if (n - w.lo < guard || w.hi - n < guard)
        throw input_error("pv_diagonal_test: index too near the window edge");

    // <n|E^2|n> = sum_s |c_{n,s}|^2 |nu_{s-n}([0,2*pi*x))|^2 with
    // |nu_q|^2 = sin^2(pi q x) / (pi q)^2 for q != 0 and x^2 at q = 0.
    PvDiagonalResult res;
    res.rhs = x;
    for (int s = w.lo; s <= w.hi; ++s) {
        const int q = s - n;
        const double weight =
            q == 0 ? x * x
                   : std::pow(std::sin(pi * q * x) / (pi * q), 2);
        res.lhs += std::norm(c.at(n, s)) * weight;
    }
    // Cut terms are bounded by sum_{|q|>K} 1/(pi q)^2 <= 4 / (pi^2 K).
    const int reach = std::min(n - w.lo, w.hi - n);
    res.tail_bound = 4.0 / (pi * pi * static_cast<double>(reach));
    return res;
}

std::optional<GaugePhases> check_equivalent(const PhaseMatrix& c,
                                            const PhaseMatrix& cprime,
                                            double tol, double tol_zero) {
    if (!(c.window() == cprime.window()))
        throw input_error("check_equivalent: window mismatch");
    const CMatrix& a = c.entries();
    const CMatrix& b = cprime.entries();
    const std::size_t n = a.rows();

    // Zero patterns and moduli are gauge invariants; mismatch rules the
    // pair out before any propagation.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const bool za = std::abs(a(i, j)) <= tol_zero;
            const bool zb = std::abs(b(i, j)) <= tol_zero;
            if (za != zb) return std::nullopt;
            if (!za && std::abs(std::abs(a(i, j)) - std::abs(b(i, j))) > tol)
                return std::nullopt;
        }

    // Breadth-first gauge propagation: z_root = 1 per connected component,
    // z_m = z_n * (c'_{n,m} / c_{n,m}) along edges |c_{n,m}| > tol_zero.
    std::vector<cplx> z(n, cplx{0.0, 0.0});
    std::vector<bool> seen(n, false);
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        z[root] = 1.0;
        std::deque<std::size_t> queue{root};
        while (!queue.empty()) {
            const std::size_t i = queue.front();
            queue.pop_front();
            for (std::size_t j = 0; j < n; ++j) {
                if (seen[j] || std::abs(a(i, j)) <= tol_zero) continue;
                seen[j] = true;
                cplx zj = z[i] * (b(i, j) / a(i, j));
                zj /= std::abs(zj); // ratio modulus ~1; snap to the circle
                z[j] = zj;
                queue.push_back(j);
            }
        }
    }

    // Verify the defining relation on every edge, including non-tree edges
    // (this is where inconsistent cycles fail).
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(a(i, j)) <= tol_zero) continue;
            if (std::abs(std::conj(z[i]) * z[j] * a(i, j) - b(i, j)) > tol)
                return std::nullopt;
        }
    return GaugePhases{c.window(), std::move(z)};
}

CMatrix cyclic_moment(const PhaseMatrix& c, int k) {
    const int dim = c.window().dim();
    if (std::abs(k) >= dim)
        throw input_error("cyclic_moment: |k| must be < window dimension");
    CMatrix v(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    // Full-circle kernel selects m = n - k.
    for (int i = 0; i < dim; ++i) {
        const int j = i - k;
        if (j < 0 || j >= dim) continue;
        v(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
            c.entries()(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    return v;
}

bool pv_from_first_moment(const PhaseMatrix& c, double tol) {
    const CMatrix& m = c.entries();
    const std::size_t n = m.rows();
    if (n < 2) return true;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (std::abs(1.0 - std::abs(m(i, i + 1))) > tol) return false;
    // Unimodular first off-diagonal plus PSD forces the whole window to be
    // unimodular; a non-unimodular entry now means C was never PSD.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(1.0 - std::abs(m(i, j))) > tol)
                throw validation_error(
                    "pv_from_first_moment: unimodular first off-diagonal but "
                    "|c(" + std::to_string(c.window().index_at(i)) + "," +
                    std::to_string(c.window().index_at(j)) +
                    ")| != 1; matrix cannot be positive semidefinite");
    return true;
}

CMatrix first_phase_moment(const PhaseMatrix& c) {
    const std::size_t n = c.entries().rows();
    CMatrix e1(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int q = static_cast<int>(j) - static_cast<int>(i);
            e1(i, j) = q == 0 ? cplx{pi, 0.0}
                              : c.entries()(i, j) / cplx{0.0, static_cast<double>(q)};
        }
    return e1;
}

CMatrix second_phase_moment(const PhaseMatrix& c) {
    const std::size_t n = c.entries().rows();
    CMatrix e2(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int q = static_cast<int>(j) - static_cast<int>(i);
            if (q == 0) {
                e2(i, j) = 4.0 * pi * pi / 3.0;
            } else {
                const double dq = static_cast<double>(q);
                e2(i, j) = c.entries()(i, j) *
                           (two_pi / cplx{0.0, dq} + cplx{2.0 / (dq * dq), 0.0});
            }
        }
    return e2;
}

} // namespace covloc
