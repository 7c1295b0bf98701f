#include "covloc/phase_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace covloc {

namespace {

// Determinant of a small complex matrix by Gaussian elimination with
// partial pivoting. Hermitian input makes the result real up to rounding.
double hermitian_det(CMatrix a) {
    const std::size_t n = a.rows();
    cplx det{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
        if (std::abs(a(pivot, k)) == 0.0) return 0.0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det.real();
}

// Enumerate ascending index subsets of {0, .., n-1} of exactly the given
// size, lexicographically, calling f(subset) until it returns false.
template <typename F>
bool for_each_subset(std::size_t n, std::size_t size, F&& f) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    if (size > n) return true;
    while (true) {
        if (!f(idx)) return false;
        // advance to next combination
        std::size_t i = size;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - size) break;
            if (i == 0) return true;
        }
        ++idx[i];
        for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

ValidationReport validate(const PhaseMatrix& c, const Tolerances& tol) {
    const CMatrix& m = c.entries();
    const std::size_t n = m.rows();
    ValidationReport rep;
    for (std::size_t i = 0; i < n; ++i) {
        rep.diag_deviation = std::max(rep.diag_deviation, std::abs(m(i, i) - cplx{1.0, 0.0}));
        for (std::size_t j = 0; j < n; ++j) {
            rep.hermitian_deviation =
                std::max(rep.hermitian_deviation, std::abs(m(i, j) - std::conj(m(j, i))));
            rep.max_modulus = std::max(rep.max_modulus, std::abs(m(i, j)));
        }
    }
    // Symmetrization keeps the spectrum meaningful even on inputs that
    // fail the Hermiticity gate; the report then shows both defects.
    CMatrix sym(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            sym(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    const EigenDecomposition dec = hermitian_eigen(sym, 1e-6);
    rep.min_eigenvalue = dec.eigenvalues.front();
    rep.is_valid = rep.diag_deviation <= tol.diag &&
                   rep.hermitian_deviation <= tol.herm &&
                   rep.max_modulus <= 1.0 + tol.psd &&
                   rep.min_eigenvalue >= -tol.psd;
    return rep;
}

MinorCheckResult principal_minor_check(const PhaseMatrix& c, int max_order,
                                       double tol_psd) {
    if (max_order < 1)
        throw input_error("principal_minor_check: max_order must be >= 1");
    const CMatrix& m = c.entries();
    const std::size_t n = m.rows();
    MinorCheckResult result;
    for (std::size_t size = 1; size <= static_cast<std::size_t>(max_order) && size <= n; ++size) {
        const bool completed = for_each_subset(n, size, [&](const std::vector<std::size_t>& idx) {
            CMatrix sub(size, size);
            for (std::size_t i = 0; i < size; ++i)
                for (std::size_t j = 0; j < size; ++j)
                    sub(i, j) = m(idx[i], idx[j]);
            const double det = hermitian_det(std::move(sub));
            if (det < -tol_psd) {
                result.pass = false;
                result.violating_det = det;
                result.violating_indices.clear();
                for (std::size_t k : idx)
                    result.violating_indices.push_back(c.window().index_at(k));
                return false;
            }
            return true;
        });
        if (!completed) break;
    }
    return result;
}

PhaseMatrix restrict_window(const PhaseMatrix& c, IndexWindow sub) {
    if (!c.window().contains(sub))
        throw input_error("restrict_window: sub-window not contained");
    const auto d = static_cast<std::size_t>(sub.dim());
    const std::size_t shift = c.window().offset(sub.lo);
    return PhaseMatrix(sub, c.entries().block(shift, shift, d, d));
}

} // namespace covloc
