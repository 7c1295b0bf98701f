#include "covloc/catalog.hpp"

#include <cmath>

#include "covloc/rng.hpp"

namespace covloc {

PhaseMatrix parity_matrix(double xi, IndexWindow window) {
    if (!(xi >= -1.0 && xi <= 1.0))
        throw input_error("parity_matrix: xi must lie in [-1, 1]");
    const int dim = window.dim();
    CMatrix m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                ((i - j) % 2 == 0) ? 1.0 : xi;
    return PhaseMatrix(window, std::move(m));
}

PhaseMatrix pv_matrix(const std::vector<double>& phases, IndexWindow window) {
    const auto dim = static_cast<std::size_t>(window.dim());
    if (phases.size() != dim)
        throw input_error("pv_matrix: need one phase per window index");
    for (double u : phases)
        if (!std::isfinite(u)) throw input_error("pv_matrix: non-finite phase");
    CMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            m(i, j) = std::polar(1.0, phases[i] - phases[j]);
    return PhaseMatrix(window, std::move(m));
}

PhaseMatrix trivial_phase_matrix(IndexWindow window) {
    return PhaseMatrix(window,
                       CMatrix::identity(static_cast<std::size_t>(window.dim())));
}

VectorSequence random_vector_sequence(IndexWindow window, int dimension,
                                      std::uint64_t seed) {
    if (dimension < 1)
        throw input_error("random_vector_sequence: dimension must be >= 1");
    Rng rng(seed);
    const auto count = static_cast<std::size_t>(window.dim());
    std::vector<std::vector<cplx>> vectors(count);
    for (auto& h : vectors) {
        h.resize(static_cast<std::size_t>(dimension));
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (cplx& z : h) {
                z = rng.complex_normal();
                norm2 += std::norm(z);
            }
        } while (norm2 == 0.0);
        const double inv = 1.0 / std::sqrt(norm2);
        for (cplx& z : h) z *= inv;
    }
    return VectorSequence(window, dimension, std::move(vectors));
}

PhaseMatrix random_gram_matrix(IndexWindow window, int dimension, std::uint64_t seed) {
    return gram(random_vector_sequence(window, dimension, seed));
}

StateVector random_state(IndexWindow window, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> amps(static_cast<std::size_t>(window.dim()));
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (cplx& z : amps) {
            z = rng.complex_normal();
            norm2 += std::norm(z);
        }
    } while (norm2 == 0.0);
    return StateVector::normalized(window, std::move(amps));
}

PhaseMatrix CatalogSpec::build() const {
    switch (family) {
        case CatalogFamily::parity:
            return parity_matrix(xi, window);
        case CatalogFamily::pv:
            return pv_matrix(phases, window);
        case CatalogFamily::trivial:
            return trivial_phase_matrix(window);
        case CatalogFamily::random_gram:
            return random_gram_matrix(window, dimension, seed);
    }
    throw input_error("CatalogSpec: unknown family");
}

} // namespace covloc
