#pragma once

#include <vector>

#include "covloc/phase_matrix.hpp"
#include "covloc/types.hpp"
#include "covloc/window.hpp"

namespace covloc {

// One generating vector h_n per window index, all living in C^dimension.
// Norms are not constrained by the type: gram() demands unit vectors, while
// factorize_constructive() legitimately produces norms sqrt(b_nn).
class VectorSequence {
public:
    VectorSequence(IndexWindow window, int dimension,
                   std::vector<std::vector<cplx>> vectors);

    const IndexWindow& window() const { return window_; }
    int dimension() const { return dimension_; }
    const std::vector<std::vector<cplx>>& vectors() const { return vectors_; }
    const std::vector<cplx>& vec(int n) const {
        if (!window_.contains(n))
            throw input_error("VectorSequence::vec: index outside window");
        return vectors_[window_.offset(n)];
    }

private:
    IndexWindow window_;
    int dimension_ = 0;
    std::vector<std::vector<cplx>> vectors_;
};

// Raw pairwise inner products <h_n|h_m>, no norm requirements.
CMatrix gram_entries(const VectorSequence& v);

// Gram matrix of a unit-vector sequence; throws input_error naming the
// first index whose vector is not unit norm within 1e-12.
PhaseMatrix gram(const VectorSequence& v);

// h_n = n-th column of C^{1/2} (Hermitian square root; eigenvalues in
// [-tol.psd, 0) clamped to zero). Round-trips gram(result) = C to 1e-8.
VectorSequence factorize_spectral(const PhaseMatrix& c, const Tolerances& tol = {});

// Constructive factorization of a PSD matrix B on a window, valid for
// non-unit (including zero) diagonals: with weights w_n = |n| + 1 build
// S_{n,m} = b_{n,m} / (sqrt(b_nn b_mm) w_n w_m) on the support of the
// diagonal, A = S^{1/2}, and h_n = sqrt(b_nn) w_n A chi_n (h_n = 0 where
// b_nn = 0). Then <h_n|h_m> = b_{n,m}.
VectorSequence factorize_constructive(IndexWindow window, const CMatrix& b,
                               double tol_psd = 1e-10);
VectorSequence factorize_constructive(const PhaseMatrix& c, double tol_psd = 1e-10);

// Two sequences generate the same observable iff their Gram matrices agree.
bool same_observable(const VectorSequence& a, const VectorSequence& b,
                     double tol = 1e-8);

} // namespace covloc
