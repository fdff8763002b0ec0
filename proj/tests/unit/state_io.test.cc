#include "qrobust/state_io.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "test_util.h"

using namespace qrobust;

TEST(parse_state, amplitudes_and_dicke) {
    auto f = parse_state(R"({"num_qubits": 1, "amplitudes": [[0.6, 0], [0, 0.8]]})");
    EXPECT_EQ(f.num_qubits, 1u);
    EXPECT_FALSE(f.dicke);
    EXPECT_EQ(f.values[1], cplx(0, 0.8));
    auto g = parse_state(R"({"num_qubits": 2, "dicke": [[1, 0], [0, 0], [0, 0]]})");
    EXPECT_TRUE(g.dicke);
    EXPECT_EQ(g.values.size(), 3u);
}

TEST(parse_state, malformed_json_reports_location) {
    try {
        parse_state("{\"num_qubits\": 1,\n  \"amplitudes\": [[1, 0], [0 0]]}");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 2u);
        EXPECT_GT(e.column, 1u);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(parse_state, schema_errors) {
    const char *bad[] = {
        "[1, 2]",
        R"({"amplitudes": [[1, 0], [0, 0]]})",
        R"({"num_qubits": -1, "amplitudes": [[1, 0], [0, 0]]})",
        R"({"num_qubits": 0, "amplitudes": [[1, 0]]})",
        R"({"num_qubits": 1})",
        R"({"num_qubits": 1, "amplitudes": [[1, 0], [0, 0]], "dicke": [[1, 0], [0, 0]]})",
        R"({"num_qubits": 1, "amplitudes": [[1, 0], [0, 0], [0, 0]]})",
        R"({"num_qubits": 1, "amplitudes": [[1, 0], [0]]})",
        R"({"num_qubits": 1, "amplitudes": [[1, 0], ["a", 0]]})",
        R"({"num_qubits": 1, "amplitudes": 5})",
        R"({"num_qubits": 2, "dicke": [[1, 0], [0, 0]]})",
    };
    for (const char *text : bad) {
        EXPECT_THROW(parse_state(text), ParseError) << text;
    }
}

TEST(to_pure_state, normalization) {
    auto f = parse_state(R"({"num_qubits": 1, "amplitudes": [[1, 0], [1, 0]]})");
    EXPECT_THROW(to_pure_state(f, false, 1e-10), NormalizationError);
    auto p = to_pure_state(f, true, 1e-10);
    EXPECT_NEAR(p[0].real(), 1 / std::sqrt(2.0), 1e-15);
    auto close = parse_state(R"({"num_qubits": 1, "amplitudes": [[1, 0], [1e-6, 0]]})");
    EXPECT_THROW(to_pure_state(close, false, 1e-13), NormalizationError);
    EXPECT_NO_THROW(to_pure_state(close, false, 1e-10));
}

TEST(to_symmetric_state, conversions) {
    auto d = parse_state(R"({"num_qubits": 3, "dicke": [[0, 0], [1, 0], [0, 0], [0, 0]]})");
    auto p = to_pure_state(d, false, 1e-10);
    EXPECT_NEAR(std::abs(inner(p.amplitudes(), dicke_state(3, 1).amplitudes())), 1, 1e-14);
    auto a = parse_state(R"({"num_qubits": 2, "amplitudes": [[0, 0], [1, 0], [0, 0], [0, 0]]})");
    EXPECT_THROW(to_symmetric_state(a, false, 1e-10), SymmetryError);
    auto s = to_symmetric_state(parse_state(format_state(ghz_state(3))), false, 1e-10);
    EXPECT_NEAR(std::abs(s[0]), 1 / std::sqrt(2.0), 1e-15);
}

TEST(format_state, round_trip_is_exact) {
    std::mt19937_64 rng(1);
    auto psi = haar_random_state(4, rng);
    auto back = to_pure_state(parse_state(format_state(psi)), false, 1e-10);
    for (size_t x = 0; x < psi.dim(); x++) {
        EXPECT_EQ(back[x], psi[x]);
    }
    auto s = random_symmetric_state(5, rng);
    auto sb = to_symmetric_state(parse_state(format_state(s)), false, 1e-10);
    for (size_t k = 0; k <= 5; k++) {
        EXPECT_EQ(sb[k], s[k]);
    }
}

TEST(read_state_file, io) {
    EXPECT_THROW(read_state_file("/nonexistent/dir/state.json"), IoError);
    std::string path = ::testing::TempDir() + "qrobust_state_io.json";
    {
        std::ofstream out(path);
        out << format_state(ghz_state(3));
    }
    auto f = read_state_file(path);
    EXPECT_EQ(f.num_qubits, 3u);
    std::remove(path.c_str());
}
