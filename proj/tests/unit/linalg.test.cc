#include "qrobust/linalg.h"

#include <gtest/gtest.h>

#include "test_util.h"

using namespace qrobust;

TEST(complex_matrix, construction_checks) {
    EXPECT_THROW(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
    EXPECT_THROW(ComplexMatrix(1, 1, {cplx{NAN, 0}}), std::invalid_argument);
    ComplexMatrix m(2, 3, {1.0, 2.0, 3.0, 4.0, 5.0, cplx{6, 1}});
    EXPECT_EQ(m.rows(), 2u);
    EXPECT_EQ(m.cols(), 3u);
    EXPECT_EQ(m(1, 2), cplx(6, 1));
    EXPECT_EQ(m.adjoint()(2, 1), cplx(6, -1));
    EXPECT_EQ(m.transpose()(2, 1), cplx(6, 1));
}

TEST(complex_matrix, products) {
    ComplexMatrix a(2, 2, {1.0, 2.0, 3.0, 4.0});
    ComplexMatrix b(2, 2, {0.0, 1.0, 1.0, 0.0});
    auto c = a * b;
    EXPECT_EQ(c(0, 0), cplx(2));
    EXPECT_EQ(c(0, 1), cplx(1));
    EXPECT_EQ(c(1, 0), cplx(4));
    auto k = kron(ComplexMatrix::identity(2), b);
    EXPECT_EQ(k.rows(), 4u);
    EXPECT_EQ(k(0, 1), cplx(1));
    EXPECT_EQ(k(2, 3), cplx(1));
    EXPECT_EQ(k(0, 3), cplx(0));
    std::vector<cplx> v{1.0, cplx{0, 1}};
    auto w = a * std::span<const cplx>(v);
    EXPECT_EQ(w[0], cplx(1, 2));
    EXPECT_NEAR(norm(v), std::sqrt(2.0), 1e-15);
    EXPECT_EQ(inner(v, v), cplx(2));
}

TEST(eig_hermitian, identity_and_diagonal) {
    auto e = eig_hermitian(ComplexMatrix::identity(2));
    EXPECT_NEAR(e.values[0], 1, 1e-15);
    EXPECT_NEAR(e.values[1], 1, 1e-15);
    std::vector<cplx> d{0.7, 0.3};
    auto f = eig_hermitian(ComplexMatrix::diagonal(d));
    EXPECT_NEAR(f.values[0], 0.3, 1e-15);
    EXPECT_NEAR(f.values[1], 0.7, 1e-15);
    EXPECT_NEAR(std::abs(f.vectors(1, 0)), 1, 1e-15);
    EXPECT_NEAR(std::abs(f.vectors(0, 1)), 1, 1e-15);
}

TEST(eig_hermitian, rejects_bad_input) {
    EXPECT_THROW(eig_hermitian(ComplexMatrix(2, 3)), std::invalid_argument);
    ComplexMatrix m(2, 2, {1.0, 1.0, 0.0, 1.0});
    EXPECT_THROW(eig_hermitian(m), std::invalid_argument);
}

TEST(eig_hermitian, random_reconstruction) {
    std::mt19937_64 rng(7);
    for (size_t n : {1u, 2u, 3u, 8u, 16u, 33u}) {
        auto h = qtest::random_hermitian(n, rng);
        auto e = eig_hermitian(h);
        std::vector<cplx> lam(e.values.begin(), e.values.end());
        auto rec = e.vectors * ComplexMatrix::diagonal(lam) * e.vectors.adjoint();
        EXPECT_LE(max_abs_diff(rec, h), 1e-9 * std::max(1.0, h.max_abs())) << n;
        EXPECT_LE(max_abs_diff(e.vectors.adjoint() * e.vectors, ComplexMatrix::identity(n)), 1e-10) << n;
        EXPECT_NEAR(std::accumulate(e.values.begin(), e.values.end(), 0.0), h.trace().real(), 1e-9);
        for (size_t i = 0; i + 1 < n; i++) {
            EXPECT_LE(e.values[i], e.values[i + 1]);
        }
        for (size_t i = 0; i < n; i++) {
            auto v = e.vectors.column(i);
            auto hv = h * std::span<const cplx>(v);
            double r = 0;
            for (size_t j = 0; j < n; j++) {
                r += std::norm(hv[j] - e.values[i] * v[j]);
            }
            EXPECT_LE(std::sqrt(r), 1e-9 * h.frobenius_norm());
        }
    }
}

TEST(eig_hermitian, degenerate_cluster_stays_orthonormal) {
    std::mt19937_64 rng(11);
    auto u = qtest::random_unitary(6, rng);
    std::vector<cplx> d{0.5, 0.5, 0.5, 0.2, 0.2, 0.0};
    auto h = u * ComplexMatrix::diagonal(d) * u.adjoint();
    h = 0.5 * (h + h.adjoint());
    auto e = eig_hermitian(h);
    EXPECT_LE(max_abs_diff(e.vectors.adjoint() * e.vectors, ComplexMatrix::identity(6)), 1e-10);
    EXPECT_NEAR(e.values[5], 0.5, 1e-12);
    EXPECT_NEAR(e.values[0], 0.0, 1e-12);
}

TEST(schmidt, product_and_entangled) {
    // |0>|+> as a 2x2 amplitude matrix.
    double s = 1 / std::sqrt(2.0);
    auto sd = schmidt_decompose(ComplexMatrix(2, 2, {s, s, 0.0, 0.0}));
    EXPECT_NEAR(sd.coefficients[0], 1, 1e-12);
    EXPECT_NEAR(sd.coefficients[1], 0, 1e-12);
    EXPECT_EQ(sd.rank(), 1u);
    auto bell = schmidt_decompose(ComplexMatrix(2, 2, {s, 0.0, 0.0, s}));
    EXPECT_NEAR(bell.coefficients[0], s, 1e-12);
    EXPECT_NEAR(bell.coefficients[1], s, 1e-12);
    EXPECT_EQ(bell.rank(), 2u);
}

TEST(schmidt, random_reconstruction_and_swap_invariance) {
    std::mt19937_64 rng(3);
    for (auto [r, c] : {std::pair<size_t, size_t>{2, 8}, {8, 2}, {4, 4}, {4, 16}, {1, 4}}) {
        auto m = qtest::random_matrix(r, c, rng);
        m *= 1 / m.frobenius_norm();
        auto sd = schmidt_decompose(m);
        ComplexMatrix rec(r, c);
        double total = 0;
        for (size_t i = 0; i < sd.coefficients.size(); i++) {
            total += sd.coefficients[i] * sd.coefficients[i];
            for (size_t a = 0; a < r; a++) {
                for (size_t b = 0; b < c; b++) {
                    rec(a, b) += sd.coefficients[i] * sd.left[i][a] * sd.right[i][b];
                }
            }
        }
        EXPECT_NEAR(total, 1, 1e-12);
        EXPECT_LE(max_abs_diff(rec, m), 1e-9);
        auto swapped = schmidt_decompose(m.transpose());
        for (size_t i = 0; i < sd.coefficients.size(); i++) {
            EXPECT_NEAR(sd.coefficients[i], swapped.coefficients[i], 1e-12);
        }
        for (size_t i = 0; i < sd.left.size(); i++) {
            for (size_t j = 0; j < sd.left.size(); j++) {
                EXPECT_NEAR(std::abs(inner(sd.left[i], sd.left[j])), i == j ? 1.0 : 0.0, 1e-10);
                EXPECT_NEAR(std::abs(inner(sd.right[i], sd.right[j])), i == j ? 1.0 : 0.0, 1e-10);
            }
        }
    }
}

TEST(trace_norm, basics) {
    EXPECT_NEAR(trace_norm(ComplexMatrix::identity(5)), 5, 1e-14);
    std::vector<cplx> d{0.5, -0.5};
    EXPECT_NEAR(trace_norm(ComplexMatrix::diagonal(d)), 1, 1e-14);
    EXPECT_THROW(trace_norm(ComplexMatrix(2, 3)), std::invalid_argument);
    // Nilpotent: singular values (1, 0).
    EXPECT_NEAR(trace_norm(ComplexMatrix(2, 2, {0.0, 1.0, 0.0, 0.0})), 1, 1e-14);
}

TEST(trace_norm, hermitian_matches_eigenvalues_and_unitary_invariance) {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 10; rep++) {
        auto h = qtest::random_hermitian(6, rng);
        auto e = eig_hermitian(h);
        double s = 0;
        for (double v : e.values) {
            s += std::abs(v);
        }
        EXPECT_NEAR(trace_norm(h), s, 1e-10);
        auto m = qtest::random_matrix(5, 5, rng);
        auto u = qtest::random_unitary(5, rng);
        auto v = qtest::random_unitary(5, rng);
        EXPECT_NEAR(trace_norm(u * m * v), trace_norm(m), 1e-9);
    }
}

TEST(determinant_and_solve, small_cases) {
    ComplexMatrix a(2, 2, {1.0, 2.0, 3.0, 4.0});
    EXPECT_NEAR(std::abs(determinant(a) - cplx(-2)), 0, 1e-14);
    EXPECT_NEAR(std::abs(determinant(ComplexMatrix::identity(4)) - cplx(1)), 0, 1e-15);
    auto x = solve(a, ComplexMatrix::identity(2));
    EXPECT_LE(max_abs_diff(a * x, ComplexMatrix::identity(2)), 1e-14);
    EXPECT_THROW(solve(ComplexMatrix(2, 2), ComplexMatrix::identity(2)), std::domain_error);
    EXPECT_THROW(determinant(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST(determinant_and_solve, random_product_rule) {
    std::mt19937_64 rng(9);
    auto a = qtest::random_matrix(5, 5, rng);
    auto b = qtest::random_matrix(5, 5, rng);
    EXPECT_LE(std::abs(determinant(a * b) - determinant(a) * determinant(b)), 1e-9 * std::abs(determinant(a * b)));
}
