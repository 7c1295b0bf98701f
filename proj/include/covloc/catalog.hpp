#pragma once

#include <cstdint>
#include <vector>

#include "covloc/gram.hpp"
#include "covloc/observable.hpp"
#include "covloc/phase_matrix.hpp"
#include "covloc/types.hpp"
#include "covloc/window.hpp"

namespace covloc {

// Alternating two-vector family: c_{n,m} = 1 when n - m is even, xi
// otherwise. Commutative for every xi in [-1, 1]; projection valued only
// at xi = +-1.
PhaseMatrix parity_matrix(double xi, IndexWindow window);

// Rank-one unimodular family c_{n,m} = e^{i (u_n - u_m)}; one phase per
// window index. Always projection valued and gauge equivalent to all-ones.
PhaseMatrix pv_matrix(const std::vector<double>& phases, IndexWindow window);

// Identity matrix: the trivial observable X -> haar_measure(X) I.
PhaseMatrix trivial_phase_matrix(IndexWindow window);

// Gram matrix of window-many unit vectors drawn uniformly on the sphere in
// C^dimension (normalized complex Gaussians). Deterministic per seed.
PhaseMatrix random_gram_matrix(IndexWindow window, int dimension, std::uint64_t seed);
VectorSequence random_vector_sequence(IndexWindow window, int dimension,
                                      std::uint64_t seed);

// Random unit-norm state over the window (normalized complex Gaussian).
StateVector random_state(IndexWindow window, std::uint64_t seed);

enum class CatalogFamily { parity, pv, trivial, random_gram };

struct CatalogSpec {
    CatalogFamily family = CatalogFamily::trivial;
    IndexWindow window;
    double xi = 0.0;                // parity
    std::vector<double> phases;     // pv
    int dimension = 1;              // random_gram
    std::uint64_t seed = 0;         // random_gram

    PhaseMatrix build() const;
};

} // namespace covloc
