#include "covloc/gram.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "covloc/hermitian_eigen.hpp"

namespace covloc {

namespace {

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Hermitian square root with negative eigenvalues clamped to zero.
// Eigenvalues below clamp_floor are a failed precondition, not a clamp.
CMatrix psd_sqrt(const CMatrix& m, double clamp_floor) {
    const EigenDecomposition dec = hermitian_eigen(m, 1e-9);
    if (dec.eigenvalues.front() < clamp_floor)
        throw input_error("psd_sqrt: matrix not positive semidefinite (min eigenvalue " +
                          std::to_string(dec.eigenvalues.front()) + ")");
    const std::size_t n = m.rows();
    CMatrix root(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                const double lam = std::max(dec.eigenvalues[k], 0.0);
                s += dec.eigenvectors(i, k) * std::sqrt(lam) *
                     std::conj(dec.eigenvectors(j, k));
            }
            root(i, j) = s;
        }
    return root;
}

} // namespace

VectorSequence::VectorSequence(IndexWindow window, int dimension,
                               std::vector<std::vector<cplx>> vectors)
    : window_(window), dimension_(dimension), vectors_(std::move(vectors)) {
    if (dimension_ < 1)
        throw input_error("VectorSequence: dimension must be >= 1");
    if (vectors_.size() != static_cast<std::size_t>(window_.dim()))
        throw input_error("VectorSequence: vector count does not match window");
    for (const auto& h : vectors_)
        if (h.size() != static_cast<std::size_t>(dimension_))
            throw input_error("VectorSequence: vector length does not match dimension");
}

CMatrix gram_entries(const VectorSequence& v) {
    const std::size_t n = v.vectors().size();
    CMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g(i, j) = inner(v.vectors()[i], v.vectors()[j]);
    return g;
}

PhaseMatrix gram(const VectorSequence& v) {
    for (std::size_t i = 0; i < v.vectors().size(); ++i) {
        double norm2 = 0.0;
        for (const cplx& z : v.vectors()[i]) norm2 += std::norm(z);
        if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
            throw input_error("gram: vector at index " +
                              std::to_string(v.window().index_at(i)) +
                              " is not unit norm");
    }
    return PhaseMatrix(v.window(), gram_entries(v));
}

VectorSequence factorize_spectral(const PhaseMatrix& c, const Tolerances& tol) {
    const ValidationReport rep = validate(c, tol);
    if (!rep.is_valid)
        throw input_error("factorize_spectral: input failed validation (min eigenvalue " +
                          std::to_string(rep.min_eigenvalue) + ")");
    const CMatrix root = psd_sqrt(c.entries(), -tol.psd);
    const std::size_t n = root.rows();
    std::vector<std::vector<cplx>> vectors(n, std::vector<cplx>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) vectors[j][i] = root(i, j);
    return VectorSequence(c.window(), static_cast<int>(n), std::move(vectors));
}

VectorSequence factorize_constructive(IndexWindow window, const CMatrix& b, double tol_psd) {
    const auto n = static_cast<std::size_t>(window.dim());
    if (b.rows() != n || b.cols() != n)
        throw input_error("factorize_constructive: matrix does not match window");

    // The PSD gate runs on B itself; the weighted matrix S below inherits
    // positivity mathematically, so any negativity there is rounding noise
    // (possibly amplified by small diagonals) and gets clamped.
    const EigenDecomposition bdec = hermitian_eigen(b, 1e-9);
    if (bdec.eigenvalues.front() < -tol_psd)
        throw input_error("factorize_constructive: matrix not positive semidefinite (min eigenvalue " +
                          std::to_string(bdec.eigenvalues.front()) + ")");

    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = std::max(b(i, i).real(), 0.0);

    // S = D B D with D_n = 1 / (sqrt(b_nn) (|n|+1)) on the support of the
    // diagonal; rows with b_nn = 0 drop out entirely (PSD forces their
    // whole row to zero).
    std::vector<double> weight(n), dscale(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        weight[i] = static_cast<double>(std::abs(window.index_at(i))) + 1.0;
        if (diag[i] > tol_psd) dscale[i] = 1.0 / (std::sqrt(diag[i]) * weight[i]);
    }
    CMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s(i, j) = b(i, j) * dscale[i] * dscale[j];

    const CMatrix a = psd_sqrt(s, -std::numeric_limits<double>::infinity());

    std::vector<std::vector<cplx>> vectors(n, std::vector<cplx>(n, cplx{0.0, 0.0}));
    for (std::size_t j = 0; j < n; ++j) {
        if (dscale[j] == 0.0) continue; // h_j = 0
        const double factor = std::sqrt(diag[j]) * weight[j];
        for (std::size_t i = 0; i < n; ++i) vectors[j][i] = factor * a(i, j);
    }
    return VectorSequence(window, static_cast<int>(n), std::move(vectors));
}

VectorSequence factorize_constructive(const PhaseMatrix& c, double tol_psd) {
    return factorize_constructive(c.window(), c.entries(), tol_psd);
}

bool same_observable(const VectorSequence& a, const VectorSequence& b, double tol) {
    if (!(a.window() == b.window()))
        throw input_error("same_observable: window mismatch");
    return max_abs_diff(gram_entries(a), gram_entries(b)) <= tol;
}

} // namespace covloc
