#pragma once

#include <cstdint>
#include <vector>

#include "covloc/phase_matrix.hpp"
#include "covloc/torus.hpp"
#include "covloc/types.hpp"
#include "covloc/window.hpp"

namespace covloc {

// Unit-norm amplitude vector over a window.
class StateVector {
public:
    StateVector(IndexWindow window, std::vector<cplx> amplitudes);

    static StateVector basis(IndexWindow window, int n);
    static StateVector uniform_superposition(IndexWindow window);
    // Normalizes the amplitudes first; throws on an all-zero vector.
    static StateVector normalized(IndexWindow window, std::vector<cplx> amplitudes);

    const IndexWindow& window() const { return window_; }
    const std::vector<cplx>& amplitudes() const { return amplitudes_; }

private:
    IndexWindow window_;
    std::vector<cplx> amplitudes_;
};

// The operator E(X) on a window: entries c_{n,m} * kernel_integral(X, m-n).
// Hermitian, PSD (Schur product of two PSD matrices), contraction.
struct EffectMatrix {
    IndexWindow window;
    ArcSet arc_set;
    CMatrix entries;
};

// Builds E(X); the phase matrix is validated first (validation_error on
// failure). E(full circle) is exactly the identity, E(empty) exactly zero.
EffectMatrix effect_matrix(const PhaseMatrix& c, const ArcSet& x,
                           const Tolerances& tol = {});

// <psi|E(X)|psi>, unclamped; callers that report probabilities clamp to
// [0, 1] at the output boundary.
double probability(const PhaseMatrix& c, const StateVector& psi, const ArcSet& x,
                   const Tolerances& tol = {});

// Outcome density w.r.t. d theta: p(theta) = v^H C v / (2*pi) with
// v_n = psi_n e^{i n theta}. Nonnegative up to rounding for PSD C and
// integrates to 1 over the circle.
double density(const PhaseMatrix& c, const StateVector& psi, double theta);

// Diagonal of the rotation unitary U(theta) on the window: u_n = e^{-i n theta}.
// Conjugation by U(theta) carries E(X) to E(X + theta) exactly at truncation.
std::vector<cplx> rotation_phases(IndexWindow window, double theta);

// || U(theta) E(X) U(theta)^H - E(X + theta) ||_F; <= 1e-12 for valid inputs.
double covariance_check(const PhaseMatrix& c, const ArcSet& x, double theta,
                        const Tolerances& tol = {});

// || E(X u Y) - E(X) - E(Y) ||_F for disjoint X, Y; <= 1e-12.
// Throws input_error when X and Y overlap.
double additivity_check(const PhaseMatrix& c, const ArcSet& x, const ArcSet& y,
                        const Tolerances& tol = {});

// Born-rule sampling: i.i.d. draws from the outcome density via inverse CDF
// on a uniform grid with linear interpolation. Deterministic given seed.
std::vector<double> sample(const PhaseMatrix& c, const StateVector& psi,
                           std::size_t count, std::uint64_t seed,
                           std::size_t grid = std::size_t{1} << 14);

} // namespace covloc
