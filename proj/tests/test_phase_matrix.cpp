#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "covloc/catalog.hpp"
#include "covloc/hermitian_eigen.hpp"
#include "covloc/phase_matrix.hpp"
#include "covloc/rng.hpp"
#include "test_utils.hpp"

using namespace covloc;

TEST_CASE("validate accepts the identity and the all-ones matrix") {
    const IndexWindow w(-3, 3);
    const auto n = static_cast<std::size_t>(w.dim());

    const ValidationReport id_rep = validate(trivial_phase_matrix(w));
    CHECK(id_rep.is_valid);
    CHECK(id_rep.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-12));

    CMatrix ones(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ones(i, j) = 1.0;
    const ValidationReport ones_rep = validate(PhaseMatrix(w, ones));
    CHECK(ones_rep.is_valid);
    CHECK(std::abs(ones_rep.min_eigenvalue) <= 1e-12); // rank one, eigenvalue 0
}

TEST_CASE("validate rejects an off-diagonal entry of modulus 1.2") {
    const IndexWindow w(-3, 3);
    CMatrix m = CMatrix::identity(static_cast<std::size_t>(w.dim()));
    m(w.offset(0), w.offset(1)) = 1.2;
    m(w.offset(1), w.offset(0)) = 1.2;
    const ValidationReport rep = validate(PhaseMatrix(w, m));
    CHECK(!rep.is_valid);
    CHECK(rep.max_modulus == doctest::Approx(1.2));
    // 2x2 minor 1 - 1.2^2 < 0, so the spectrum dips negative too
    CHECK(rep.min_eigenvalue < 0.0);
}

TEST_CASE("PhaseMatrix construction checks dimensions") {
    CHECK_THROWS_AS(PhaseMatrix(IndexWindow(0, 3), CMatrix::identity(3)), input_error);
    CHECK_THROWS_AS(IndexWindow(2, 1), input_error);
}

TEST_CASE("principal_minor_check passes the parity matrix") {
    const PhaseMatrix c = parity_matrix(0.5, IndexWindow(-2, 2));
    const MinorCheckResult res = principal_minor_check(c, 3);
    CHECK(res.pass);
    CHECK(res.violating_indices.empty());
}

TEST_CASE("principal_minor_check finds the order-3 violation") {
    // order-2 minors all pass (1 - 0.81 > 0) but the 3x3 determinant is
    // 0.19 - 2 * 0.9 * 1.71 = -2.888
    const IndexWindow w(0, 2);
    CMatrix m = CMatrix::identity(3);
    m(0, 1) = m(1, 0) = 0.9;
    m(1, 2) = m(2, 1) = 0.9;
    m(0, 2) = m(2, 0) = -0.9;
    const PhaseMatrix c(w, m);
    CHECK(principal_minor_check(c, 2).pass);
    const MinorCheckResult res = principal_minor_check(c, 3);
    CHECK(!res.pass);
    CHECK(res.violating_indices == std::vector<int>{0, 1, 2});
    CHECK(res.violating_det == doctest::Approx(-2.888).epsilon(1e-12));
}

TEST_CASE("order-2 minors bound every modulus of a valid matrix by 1") {
    Rng rng(31);
    for (int d : {2, 5, 9}) {
        const PhaseMatrix c =
            random_gram_matrix(IndexWindow(-2, 2), d, rng.uniform() * 1000);
        CHECK(principal_minor_check(c, 2).pass);
        CHECK(validate(c).max_modulus <= 1.0 + 1e-12);
    }
}

TEST_CASE("hermitian_eigen: identity and 2x2 closed forms") {
    const EigenDecomposition id = hermitian_eigen(CMatrix::identity(4));
    for (double lam : id.eigenvalues) CHECK(lam == doctest::Approx(1.0));

    for (double xi : {0.3, -0.7, 0.999}) {
        CMatrix m(2, 2);
        m(0, 0) = m(1, 1) = 1.0;
        m(0, 1) = m(1, 0) = xi;
        const EigenDecomposition dec = hermitian_eigen(m);
        CHECK(dec.eigenvalues[0] == doctest::Approx(1.0 - std::abs(xi)).epsilon(1e-12));
        CHECK(dec.eigenvalues[1] == doctest::Approx(1.0 + std::abs(xi)).epsilon(1e-12));
    }
}

TEST_CASE("hermitian_eigen contract on random Hermitian matrices") {
    Rng rng(37);
    for (std::size_t n : {3u, 8u, 33u}) {
        const CMatrix m = test_utils::random_hermitian(n, rng);
        const EigenDecomposition dec = hermitian_eigen(m);

        // eigenvalues ascending
        for (std::size_t i = 1; i < n; ++i)
            CHECK(dec.eigenvalues[i - 1] <= dec.eigenvalues[i]);

        // residual || M v - lambda v || <= 1e-10 * n
        for (std::size_t j = 0; j < n; ++j) {
            double res2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                cplx mv{0.0, 0.0};
                for (std::size_t k = 0; k < n; ++k) mv += m(i, k) * dec.eigenvectors(k, j);
                res2 += std::norm(mv - dec.eigenvalues[j] * dec.eigenvectors(i, j));
            }
            CHECK(std::sqrt(res2) <= 1e-10 * static_cast<double>(n));
        }

        // unitarity of the eigenvector matrix
        const CMatrix vhv = dec.eigenvectors.adjoint() * dec.eigenvectors;
        CHECK(max_abs_diff(vhv, CMatrix::identity(n)) <= 1e-10);

        // spectral reconstruction
        CMatrix rec(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                cplx s{0.0, 0.0};
                for (std::size_t k = 0; k < n; ++k)
                    s += dec.eigenvalues[k] * dec.eigenvectors(i, k) *
                         std::conj(dec.eigenvectors(j, k));
                rec(i, j) = s;
            }
        CHECK(max_abs_diff(rec, m) <= 1e-10);

        // trace identity
        double sum = 0.0, trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += dec.eigenvalues[i];
            trace += m(i, i).real();
        }
        CHECK(sum == doctest::Approx(trace).epsilon(1e-10));
    }
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
    CMatrix m = CMatrix::identity(3);
    m(0, 1) = cplx{0.0, 0.5};
    m(1, 0) = cplx{0.0, 0.5}; // should be -0.5i
    CHECK_THROWS_AS(hermitian_eigen(m), input_error);
}

TEST_CASE("eigenvalues of a unit-diagonal matrix sum to the dimension") {
    Rng rng(41);
    const PhaseMatrix c = random_gram_matrix(IndexWindow(-6, 6), 5, 99);
    const EigenDecomposition dec = hermitian_eigen(c.entries());
    double sum = 0.0;
    for (double lam : dec.eigenvalues) sum += lam;
    CHECK(sum == doctest::Approx(c.window().dim()).epsilon(1e-10));
}

TEST_CASE("restrict_window") {
    const PhaseMatrix c = parity_matrix(0.5, IndexWindow(-4, 4));

    // a principal submatrix of a valid matrix stays valid
    const PhaseMatrix sub = restrict_window(c, IndexWindow(0, 4));
    CHECK(validate(sub).is_valid);

    // identity restriction
    const PhaseMatrix same = restrict_window(c, c.window());
    CHECK(max_abs_diff(same.entries(), c.entries()) == 0.0);

    // the parity pattern survives restriction
    const PhaseMatrix sub2 = restrict_window(c, IndexWindow(0, 3));
    const PhaseMatrix direct = parity_matrix(0.5, IndexWindow(0, 3));
    CHECK(max_abs_diff(sub2.entries(), direct.entries()) == 0.0);

    CHECK_THROWS_AS(restrict_window(c, IndexWindow(-5, 0)), input_error);

    // every principal submatrix of a random valid matrix passes validate
    const PhaseMatrix g = random_gram_matrix(IndexWindow(-4, 4), 6, 1234);
    for (int lo = -4; lo <= 0; ++lo) {
        const PhaseMatrix s = restrict_window(g, IndexWindow(lo, lo + 3));
        CHECK(validate(s).is_valid);
    }
}

TEST_CASE("principal minors up to order 3 never reject a PSD matrix") {
    Rng rng(43);
    for (int trial = 0; trial < 5; ++trial) {
        const PhaseMatrix c = random_gram_matrix(
            IndexWindow(0, 5), 2 + trial, 7000 + static_cast<std::uint64_t>(trial));
        if (validate(c).min_eigenvalue >= 0.0) CHECK(principal_minor_check(c, 3).pass);
    }
}
