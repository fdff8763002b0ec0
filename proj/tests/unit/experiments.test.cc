#include "qrobust/experiments.h"

#include <gtest/gtest.h>

#include <sstream>

#include "qrobust/dicke_family.h"

using namespace qrobust;

namespace {

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

}  // namespace

TEST(parallel_for, covers_every_index_and_propagates_errors) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](size_t i) { hits[i]++; }, 4);
    for (int h : hits) {
        EXPECT_EQ(h, 1);
    }
    EXPECT_THROW(parallel_for(100, [](size_t i) {
        if (i == 37) {
            throw std::runtime_error("boom");
        }
    }, 4),
                 std::runtime_error);
    parallel_for(0, [](size_t) { FAIL(); });
}

TEST(linear_grid, endpoints) {
    auto g = linear_grid(0, 3, 0.05);
    ASSERT_EQ(g.size(), 61u);
    EXPECT_EQ(g.front(), 0);
    EXPECT_NEAR(g.back(), 3, 1e-12);
    EXPECT_EQ(linear_grid(1, 1, 0.1).size(), 1u);
    EXPECT_THROW(linear_grid(0, 1, 0), std::invalid_argument);
    EXPECT_THROW(linear_grid(1, 0, 0.1), std::invalid_argument);
}

TEST(format_double, seventeen_digits) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(-2), "-2");
    EXPECT_EQ(std::stod(format_double(1.0 / 3)), 1.0 / 3);
}

TEST(dicke_sweep, row_order_and_values) {
    auto rows = dicke_sweep({4, 5}, {1, 2}, {0, 0.5}, true);
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_EQ(rows[0].n, 4u);
    EXPECT_EQ(rows[0].k, 1u);
    EXPECT_EQ(rows[1].u, 0.5);
    EXPECT_EQ(rows[2].k, 2u);
    EXPECT_EQ(rows[4].n, 5u);
    for (const auto &r : rows) {
        FamilyPoint pt{r.n, r.k, r.u};
        EXPECT_EQ(r.a, A_coeff(pt));
        EXPECT_EQ(r.det_pt, det_pt_rho12(pt));
        EXPECT_LT(r.det_pt, 0);
        EXPECT_GT(r.negativity, 0);
        ASSERT_TRUE(r.oracle_max_diff.has_value());
        EXPECT_LE(*r.oracle_max_diff, 1e-12);
    }
    EXPECT_EQ(dicke_sweep({3}, {1, 3}, {0}, false).size(), 1u);
    EXPECT_THROW(dicke_sweep({11}, {1}, {0}, true), std::invalid_argument);
}

TEST(dicke_sweep, csv_format) {
    auto rows = dicke_sweep({6}, {1, 2}, linear_grid(0, 1, 0.5), false);
    std::ostringstream out;
    write_dicke_csv(out, rows, false);
    auto ls = lines(out.str());
    ASSERT_EQ(ls.size(), 1 + 1 + rows.size() + 1);
    EXPECT_EQ(ls[0].rfind("# schema_version=1 command=dicke-sweep", 0), 0u);
    EXPECT_EQ(ls[1], "N,k,u,A,det_pt,negativity");
    EXPECT_EQ(ls[2].rfind("6,1,0,6,", 0), 0u);
    EXPECT_EQ(ls.back().rfind("# summary rows=6 all_det_negative=true", 0), 0u);
    std::ostringstream ver;
    write_dicke_csv(ver, dicke_sweep({6}, {1}, {0}, true), true);
    EXPECT_EQ(lines(ver.str())[1], "N,k,u,A,det_pt,negativity,oracle_max_diff");
}

TEST(mu_scan, t2_agrees_with_region) {
    auto scan = mu_scan(2, 41, 41);
    EXPECT_EQ(scan.rows.size(), 41u * 41u);
    EXPECT_GT(scan.compared, 100u);
    EXPECT_GE(scan.agreement(), 0.99);
    EXPECT_EQ(scan.rows[0].re, 0);
    EXPECT_EQ(scan.rows[1].re, 0);
    EXPECT_GT(scan.rows[1].im, 0);
    size_t in_s = 0;
    for (const auto &r : scan.rows) {
        in_s += r.in_s;
        if (!r.in_s) {
            EXPECT_FALSE(r.fragile_predicted);
        }
    }
    EXPECT_EQ(in_s, scan.in_s_points);
}

TEST(mu_scan, t1_fragile_only_near_origin) {
    auto scan = mu_scan(1, 41, 41);
    for (const auto &r : scan.rows) {
        if (r.in_s && r.fragile_observed) {
            EXPECT_LE(std::abs(cplx(r.re, r.im)), scan.step * (1 + 1e-9));
        }
    }
    EXPECT_TRUE(scan.rows[0].fragile_observed);
    EXPECT_EQ(scan.agreement(), 1.0);
    EXPECT_THROW(mu_scan(3), std::invalid_argument);
}

TEST(mu_scan, csv_format) {
    auto scan = mu_scan(2, 5, 5);
    std::ostringstream out;
    write_mu_csv(out, scan);
    auto ls = lines(out.str());
    ASSERT_EQ(ls.size(), 2 + 25 + 1u);
    EXPECT_NE(ls[0].find("schema_version=1"), std::string::npos);
    EXPECT_NE(ls[0].find("s_interpretation="), std::string::npos);
    EXPECT_EQ(ls[1], "Re_mu,Im_mu,in_S,negativity_t,fragile_predicted,fragile_observed");
    EXPECT_EQ(ls.back().rfind("# summary in_S_points=", 0), 0u);
}

TEST(random_sweep, deterministic_and_ordered) {
    auto a = random_sweep(5, {1, 3}, 20, 7);
    auto b = random_sweep(5, {1, 3}, 20, 7);
    std::ostringstream oa, ob;
    write_random_csv(oa, a);
    write_random_csv(ob, b);
    EXPECT_EQ(oa.str(), ob.str());
    ASSERT_EQ(a.samples.size(), 40u);
    EXPECT_EQ(a.samples[0].t, 1u);
    EXPECT_EQ(a.samples[19].index, 19u);
    EXPECT_EQ(a.samples[20].t, 3u);
    EXPECT_EQ(a.certified_fraction[0], 1.0);
    auto c = random_sweep(5, {1, 3}, 20, 8);
    std::ostringstream oc;
    write_random_csv(oc, c);
    EXPECT_NE(oa.str(), oc.str());
    auto ls = lines(oa.str());
    EXPECT_EQ(ls[1], "N,t,sample,negativity_witness,certified_robust");
    EXPECT_EQ(ls[ls.size() - 2].rfind("# summary t=1 samples=20 certified_robust_fraction=1", 0), 0u);
}

TEST(random_sweep, validation) {
    EXPECT_THROW(random_sweep(13, {1}, 1, 0), std::invalid_argument);
    EXPECT_THROW(random_sweep(4, {4}, 1, 0), std::invalid_argument);
    EXPECT_THROW(random_sweep(4, {1}, 0, 0), std::invalid_argument);
}
