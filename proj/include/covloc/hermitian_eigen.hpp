#pragma once

#include <vector>

#include "covloc/cmatrix.hpp"
#include "covloc/types.hpp"

namespace covloc {

// Spectral decomposition M = V diag(lambda) V^H with real eigenvalues in
// ascending order and orthonormal eigenvector columns.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    CMatrix eigenvectors;
};

// Cyclic Jacobi for dense complex Hermitian matrices. Throws input_error if
// M deviates from Hermitian by more than tol_herm entrywise; the decomposed
// matrix is the exact symmetrization (M + M^H)/2.
EigenDecomposition hermitian_eigen(const CMatrix& m, double tol_herm = 1e-12);

} // namespace covloc
