#pragma once

#include <vector>

#include "covloc/cmatrix.hpp"
#include "covloc/hermitian_eigen.hpp"
#include "covloc/types.hpp"
#include "covloc/window.hpp"

namespace covloc {

// Finite window of a structure matrix (c_{n,m}): unit diagonal, Hermitian,
// positive semidefinite. Entry (n, m) is addressed by window indices; the
// convention throughout is c_{n,m} paired with kernel exponent m - n, so
// effect entries read c_{n,m} * kernel_integral(X, m - n).
class PhaseMatrix {
public:
    PhaseMatrix(IndexWindow window, CMatrix entries)
        : window_(window), entries_(std::move(entries)) {
        const auto d = static_cast<std::size_t>(window_.dim());
        if (entries_.rows() != d || entries_.cols() != d)
            throw input_error("PhaseMatrix: entries do not match window dimension");
    }

    const IndexWindow& window() const { return window_; }
    const CMatrix& entries() const { return entries_; }

    cplx at(int n, int m) const {
        if (!window_.contains(n) || !window_.contains(m))
            throw input_error("PhaseMatrix::at: index outside window");
        return entries_(window_.offset(n), window_.offset(m));
    }

private:
    IndexWindow window_;
    CMatrix entries_;
};

struct ValidationReport {
    double diag_deviation = 0.0;      // max |c_nn - 1|
    double hermitian_deviation = 0.0; // max |c_nm - conj(c_mn)|
    double max_modulus = 0.0;         // max |c_nm|
    double min_eigenvalue = 0.0;      // of the symmetrized matrix
    bool is_valid = false;
};

// Checks unit diagonal, Hermiticity, the entrywise modulus bound and
// positive semidefiniteness (via the spectrum of (C + C^H)/2).
ValidationReport validate(const PhaseMatrix& c, const Tolerances& tol = {});

struct MinorCheckResult {
    bool pass = true;
    // First violating index subset (window indices, ascending) and its
    // determinant; empty when pass. Subsets are scanned by order, then
    // lexicographically.
    std::vector<int> violating_indices;
    double violating_det = 0.0;
};

// Determinants of all principal submatrices on index subsets of size up to
// max_order must be >= -tol_psd. Combinatorial: keep max_order <= 4.
MinorCheckResult principal_minor_check(const PhaseMatrix& c, int max_order,
                                       double tol_psd = 1e-10);

// Principal submatrix on a contained window; PSD is inherited.
PhaseMatrix restrict_window(const PhaseMatrix& c, IndexWindow sub);

} // namespace covloc
