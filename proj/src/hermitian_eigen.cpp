#include "covloc/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace covloc {

namespace {

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
}

} // namespace

EigenDecomposition hermitian_eigen(const CMatrix& m, double tol_herm) {
    if (!m.square()) throw input_error("hermitian_eigen: matrix not square");
    const std::size_t n = m.rows();
    double herm_dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            herm_dev = std::max(herm_dev, std::abs(m(i, j) - std::conj(m(j, i))));
    if (herm_dev > tol_herm)
        throw input_error("hermitian_eigen: matrix not Hermitian (deviation " +
                          std::to_string(herm_dev) + ")");

    // Work on the exact symmetrization so rounding asymmetry cannot leak
    // into complex eigenvalues.
    CMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    CMatrix v = CMatrix::identity(n);
    const double scale = std::max(a.frobenius_norm(), 1e-300);
    const double stop = 1e-15 * scale;
    constexpr int kMaxSweeps = 60;

    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-18 * scale) continue;

                // Unitary plane rotation zeroing a(p,q): with
                // a_pq = r e^{i phi}, tau = (a_pp - a_qq) / (2 r),
                // t = tan(theta) is the small root of t^2 + 2 tau t - 1 = 0.
                const cplx phase = apq / r;
                const double tau = (a(p, p).real() - a(q, q).real()) / (2.0 * r);
                const double t = (tau >= 0.0)
                                     ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                a(p, p) = app * c * c + 2.0 * s * c * r + aqq * s * s;
                a(q, q) = app * s * s - 2.0 * s * c * r + aqq * c * c;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp + s * std::conj(phase) * akq;
                    a(k, q) = -s * phase * akp + c * akq;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp + s * std::conj(phase) * vkq;
                    v(k, q) = -s * phase * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenDecomposition dec;
    dec.eigenvalues.resize(n);
    dec.eigenvectors = CMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        dec.eigenvalues[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i)
            dec.eigenvectors(i, j) = v(i, order[j]);
    }
    return dec;
}

} // namespace covloc
