#include "qrobust/dicke_family.h"

#include <gtest/gtest.h>

#include "qrobust/separability.h"
#include "test_util.h"

using namespace qrobust;

namespace {

DensityOperator rho12_oracle(const FamilyPoint &pt) {
    auto psi = psi_family(pt);
    std::vector<size_t> traced;
    for (size_t q = 2; q < pt.n; q++) {
        traced.push_back(q);
    }
    return partial_trace(psi, traced);
}

}  // namespace

TEST(psi_mu, coefficients) {
    auto g = psi_mu(0);
    auto ghz = pure_to_symmetric(ghz_state(4));
    for (size_t k = 0; k <= 4; k++) {
        EXPECT_NEAR(std::abs(g[k] - ghz[k]), 0, 1e-15);
    }
    auto one = psi_mu(1);
    double s = 1 / std::sqrt(3.0);
    EXPECT_NEAR(one[0].real(), s, 1e-15);
    EXPECT_NEAR(one[2].real(), s, 1e-15);
    EXPECT_NEAR(std::abs(one[1]), 0, 1e-15);
    auto z = psi_mu({0.3, -1.7});
    EXPECT_NEAR(norm(z.coefficients()), 1, 1e-15);
}

TEST(psi_mu, single_qubit_marginals_agree) {
    auto psi = symmetric_to_pure(psi_mu({0.4, 0.9}));
    std::vector<ComplexMatrix> marg;
    for (size_t q = 0; q < 4; q++) {
        std::vector<size_t> traced;
        for (size_t r = 0; r < 4; r++) {
            if (r != q) {
                traced.push_back(r);
            }
        }
        marg.push_back(partial_trace(psi, traced).matrix());
    }
    for (size_t q = 1; q < 4; q++) {
        EXPECT_LE(max_abs_diff(marg[q], marg[0]), 1e-12);
    }
}

TEST(in_S, examples) {
    EXPECT_TRUE(in_S(0));
    EXPECT_FALSE(in_S(std::sqrt(2.0 / 3)));
    EXPECT_TRUE(in_S(0.5));
    EXPECT_TRUE(in_S({0, std::sqrt(2.0)}));
    EXPECT_FALSE(in_S({0, 1.5}));
    EXPECT_FALSE(in_S({-0.1, 0.5}));
    EXPECT_FALSE(in_S({0.5, -0.1}));
    EXPECT_TRUE(in_S({1.0, 1.0}));
    EXPECT_FALSE(in_S({2.5, 1.0}));
}

TEST(mu_fragility_region, examples) {
    EXPECT_TRUE(mu_fragility_region({0, 1}));
    EXPECT_FALSE(mu_fragility_region(0.5));
    EXPECT_TRUE(mu_fragility_region(0));
    EXPECT_THROW(mu_fragility_region({-1, 0}), std::invalid_argument);
    EXPECT_NEAR(mu_boundary_distance({0, 0}), 0, 1e-15);
    EXPECT_NEAR(mu_boundary_distance({std::sqrt(6.0) / 2, std::sqrt(6.0) / 2}), 0, 1e-15);
}

TEST(t_loss_negativity, examples) {
    EXPECT_LE(t_loss_negativity(0, 1), 1e-12);
    EXPECT_GT(t_loss_negativity(0.5, 1), 1e-9);
    EXPECT_LE(t_loss_negativity({0, 1}, 2), 1e-9);
    EXPECT_GT(t_loss_negativity(0.5, 2), 1e-9);
    EXPECT_THROW(t_loss_negativity(0, 3), std::invalid_argument);
    EXPECT_THROW(t_loss_negativity(0, 0), std::invalid_argument);
}

TEST(family_point, validation) {
    EXPECT_THROW(validate({4, 0, 1}), std::invalid_argument);
    EXPECT_THROW(validate({4, 4, 1}), std::invalid_argument);
    EXPECT_THROW(validate({4, 1, -0.5}), std::invalid_argument);
    EXPECT_THROW(validate({4, 1, INFINITY}), std::invalid_argument);
    EXPECT_NO_THROW(validate({4, 3, 0}));
}

TEST(A_coeff, examples) {
    for (size_t n = 2; n <= 10; n++) {
        for (size_t k = 1; k < n; k++) {
            EXPECT_NEAR(A_coeff({n, k, 0}), binomial(n, k), 1e-12 * binomial(n, k));
        }
    }
    EXPECT_NEAR(A_coeff({4, 1, 1}), 0.8, 1e-15);
}

TEST(A_coeff, matches_placement_norm) {
    for (size_t n = 3; n <= 8; n++) {
        for (size_t k = 1; k < n; k++) {
            for (double u : {0.0, 0.35, 1.0, 2.2}) {
                FamilyPoint pt{n, k, u};
                auto v = psi_family_by_placements(pt);
                EXPECT_NEAR(norm(v), 1, 1e-12) << n << " " << k << " " << u;
                EXPECT_NEAR(family_normalization(pt), A_coeff(pt) / std::pow(binomial(n, k), 2),
                            1e-15 * family_normalization(pt));
            }
        }
    }
}

TEST(psi_family, examples) {
    auto w = psi_family({3, 1, 0});
    EXPECT_NEAR(std::abs(inner(w.amplitudes(), dicke_state(3, 1).amplitudes())), 1, 1e-14);
    auto s = psi_family({4, 2, 1});
    EXPECT_NEAR(norm(s.amplitudes()), 1, 1e-12);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unif(0, 3);
    for (int rep = 0; rep < 20; rep++) {
        size_t n = 3 + rep % 6;
        size_t k = 1 + rep % (n - 1);
        FamilyPoint pt{n, k, unif(rng)};
        auto psi = psi_family(pt);
        EXPECT_LE(symmetry_residual(psi), 1e-12);
        auto v = psi_family_by_placements(pt);
        double d = 0;
        for (size_t x = 0; x < v.size(); x++) {
            d = std::max(d, std::abs(v[x] - psi[x]));
        }
        EXPECT_LE(d, 1e-12);
    }
}

TEST(f_coeff, examples) {
    for (size_t n = 3; n <= 9; n++) {
        for (size_t k = 1; k < n; k++) {
            double c = binomial(n, k);
            EXPECT_NEAR(f_coeff({n, k, 0}, 0, 0), binomial(n - 2, k) / (c * c), 1e-15) << n << " " << k;
        }
    }
    EXPECT_THROW(f_coeff({4, 1, 1}, 3, 0), std::invalid_argument);
    FamilyPoint pt{7, 3, 0};
    for (int j = 0; j < 3; j++) {
        for (int jp = 0; jp < 3; jp++) {
            double prev = f_coeff(pt, j, jp);
            for (double u = 0.1; u <= 3; u += 0.1) {
                double cur = f_coeff({7, 3, u}, j, jp);
                EXPECT_GE(cur, prev);
                prev = cur;
            }
        }
    }
}

TEST(rho12_closed_form, matches_partial_trace) {
    for (size_t n = 3; n <= 10; n++) {
        for (size_t k = 1; k < n; k++) {
            for (double u : {0.0, 0.5, 1.0, 3.0}) {
                FamilyPoint pt{n, k, u};
                auto cf = rho12_closed_form(pt);
                EXPECT_LE(max_abs_diff(cf.matrix(), rho12_oracle(pt).matrix()), 1e-12) << n << " " << k << " " << u;
                EXPECT_NEAR(cf.matrix().trace().real(), 1, 1e-12);
                EXPECT_LE(max_abs_diff(cf.matrix(), cf.matrix().adjoint()), 0);
            }
        }
    }
}

TEST(det_pt_rho12, k1_identity_scaled_by_n) {
    // For k = 1 the determinant comes out as -(A / N^2)^4.
    for (size_t n = 3; n <= 12; n++) {
        for (double u : {0.0, 0.3, 1.0, 2.5}) {
            FamilyPoint pt{n, 1, u};
            double a = A_coeff(pt) / static_cast<double>(n * n);
            double want = -std::pow(a, 4);
            EXPECT_NEAR(det_pt_rho12(pt), want, 1e-10 * std::abs(want)) << n << " " << u;
        }
    }
}

TEST(det_pt_rho12, transpose_side_is_immaterial) {
    FamilyPoint pt{8, 3, 0.7};
    auto rho = rho12_closed_form(pt);
    size_t first[1] = {0};
    size_t second[1] = {1};
    double d0 = determinant(partial_transpose(rho, first)).real();
    double d1 = determinant(partial_transpose(rho, second)).real();
    EXPECT_NEAR(d0, d1, 1e-15);
    EXPECT_NEAR(d0, det_pt_rho12(pt), 1e-15);
}

TEST(det_pt_rho12, negative_across_figure_grids) {
    for (size_t k = 1; k <= 6; k++) {
        for (int i = 0; i <= 60; i++) {
            double u = 0.05 * i;
            FamilyPoint pt{12, k, u};
            EXPECT_LT(det_pt_rho12(pt), 0) << k << " " << u;
            EXPECT_GT(negativity(rho12_closed_form(pt), std::vector<size_t>{0}), 1e-10);
        }
    }
    for (size_t n = 4; n <= 9; n++) {
        for (int i = 0; i <= 60; i++) {
            EXPECT_LT(det_pt_rho12({n, 2, 0.05 * i}), 0);
        }
    }
}
