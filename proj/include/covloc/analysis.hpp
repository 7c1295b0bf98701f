#pragma once

#include <optional>
#include <vector>

#include "covloc/phase_matrix.hpp"
#include "covloc/torus.hpp"
#include "covloc/types.hpp"
#include "covloc/window.hpp"

namespace covloc {

// Diagonal gauge z_n (unit modulus, one per window index) relating two
// equivalent observables: c'_{n,m} = conj(z_n) z_m c_{n,m}.
struct GaugePhases {
    IndexWindow window;
    std::vector<cplx> phases;
};

struct CommutativityViolation {
    int n = 0, m = 0, k = 0;
    cplx lhs, rhs;
};

struct CommutativityReport {
    bool commutative = true;
    double max_violation = 0.0;
    std::vector<CommutativityViolation> witnesses; // capped at 16
};

// The product criterion c_{n,n+k} c_{n+k,m} = c_{n,m-k} c_{m-k,m}, checked
// over every triple (n, m, k) whose four indices lie inside the window.
// Window-restricted: boundary triples referencing outside indices are
// skipped, so this decides commutativity evidence, not the infinite matrix.
CommutativityReport check_commutative_criterion(const PhaseMatrix& c,
                                                double tol = 1e-10);

// dim / 4: the documented default for central-block extraction.
int default_margin(const IndexWindow& window);

// Frobenius norm of the block left after dropping `margin` rows/columns on
// each side.
double central_block_frobenius(const CMatrix& m, int margin);

// Frobenius norm of the central block of E(X)E(Y) - E(Y)E(X). Truncation
// error concentrates at the window edge (the intermediate-index sum is
// cut), hence the margin.
double commutator_norm(const PhaseMatrix& c, const ArcSet& x, const ArcSet& y,
                       int margin);

// Window-restricted PV test: max |1 - |c_{n,m}|| <= tol. The infinite-matrix
// statement is an exact iff; on a window this is the necessary part.
bool check_projection_valued(const PhaseMatrix& c, double tol = 1e-12);

struct PvDiagonalResult {
    double lhs = 0.0;        // <n| E([0,2*pi*x))^2 |n> on the window
    double rhs = 0.0;        // <n| E([0,2*pi*x)) |n> = x
    double tail_bound = 0.0; // bound on what truncation cut from lhs
};

// The diagonal inequality behind the PV characterization: lhs <= rhs, with
// equality (as the window grows) exactly in the unimodular case. n must sit
// at least dim/4 away from both window edges.
PvDiagonalResult pv_diagonal_test(const PhaseMatrix& c, double x, int n);

// Searches for gauge phases realizing c' = conj(z_n) z_m c. Entries with
// modulus <= tol_zero are structural zeros; moduli must match on the rest,
// then phases propagate over a spanning tree per connected component and
// every edge is re-verified (absent on any mismatch or inconsistent cycle).
std::optional<GaugePhases> check_equivalent(const PhaseMatrix& c,
                                            const PhaseMatrix& cprime,
                                            double tol = 1e-8,
                                            double tol_zero = 1e-9);

// Cyclic moment V^(k) = integral of z^k dE: the single-diagonal matrix
// sum_n c_{n,n-k} |n><n-k| on the window. Contraction; V^(0) = I.
CMatrix cyclic_moment(const PhaseMatrix& c, int k);

// True iff the first off-diagonal is unimodular within tol. When it is, the
// whole window must be unimodular too (order-3 minors force it); any
// contradiction is reported as a validation_error of C itself.
bool pv_from_first_moment(const PhaseMatrix& c, double tol = 1e-10);

// First phase moment E^(1) = integral of theta dE: diagonal pi, off-diagonal
// c_{n,m} / (i (m - n)). Hermitian; c_{n,m} = i (m - n) entry(n, m).
CMatrix first_phase_moment(const PhaseMatrix& c);

// Second phase moment E^(2) = integral of theta^2 dE: diagonal 4*pi^2/3,
// off-diagonal c_{n,m} (2*pi/(i q) + 2/q^2) with q = m - n.
CMatrix second_phase_moment(const PhaseMatrix& c);

} // namespace covloc
