#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "iotacx/f2.hpp"

using namespace iotacx;

namespace {

F2Matrix randomInvertible(int n, std::mt19937_64& rng) {
    while (true) {
        F2Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.set(i, j, rng() & 1);
        if (m.inverse()) return m;
    }
}

}  // namespace

TEST_CASE("basic matrix operations") {
    F2Matrix id = F2Matrix::identity(4);
    CHECK(id.isIdentity());
    CHECK(id.rank() == 4);
    CHECK(id.isPermutation());

    F2Matrix a(2, 2);
    a.set(0, 0, true);
    a.set(0, 1, true);
    a.set(1, 1, true);
    F2Matrix b = a * a;
    CHECK(b.get(0, 0));
    CHECK_FALSE(b.get(0, 1));  // 1+1 = 0 over F2
    CHECK(b.get(1, 1));
}

TEST_CASE("inverse and rank on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        F2Matrix m = randomInvertible(n, rng);
        auto inv = m.inverse();
        REQUIRE(inv);
        CHECK((m * *inv).isIdentity());
        CHECK((*inv * m).isIdentity());
        CHECK(m.rank() == n);
    }
}

TEST_CASE("transvection matrix convention") {
    // Transvection{from, to} adds coordinate `from` to coordinate `to`
    F2Matrix t = transvectionMatrix(3, {0, 2});
    std::vector<bool> v{true, false, false};
    // t * e0 = e0 + e2
    CHECK(t.get(0, 0));
    CHECK(t.get(2, 0));
    CHECK_FALSE(t.get(1, 0));
}

TEST_CASE("LPU decomposition round trips") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 7);
        F2Matrix m = randomInvertible(n, rng);
        LPU d = lpuDecompose(m);
        CHECK(lpuRecompose(d) == m);
        for (const auto& t : d.lower) CHECK(t.to > t.from);   // lower-unipotent factors
        for (const auto& t : d.upper) CHECK(t.to < t.from);   // upper-unipotent factors
        // sigma is a permutation
        std::vector<bool> seen(n, false);
        for (int c = 0; c < n; ++c) {
            REQUIRE(d.sigma[c] >= 0);
            CHECK_FALSE(seen[d.sigma[c]]);
            seen[d.sigma[c]] = true;
        }
    }
}

TEST_CASE("solveF2 finds solutions and kernels") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 6);
        int cols = 1 + static_cast<int>(rng() % 6);
        F2Matrix a(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) a.set(i, j, rng() & 1);
        std::vector<bool> x(cols);
        for (int j = 0; j < cols; ++j) x[j] = rng() & 1;
        std::vector<bool> b(rows, false);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (a.get(i, j) && x[j]) b[i] = !b[i];
        std::vector<std::vector<bool>> kernel;
        auto sol = solveF2(a, b, &kernel);
        REQUIRE(sol);
        // verify the solution
        for (int i = 0; i < rows; ++i) {
            bool lhs = false;
            for (int j = 0; j < cols; ++j)
                if (a.get(i, j) && (*sol)[j]) lhs = !lhs;
            CHECK(lhs == b[i]);
        }
        for (const auto& k : kernel) {
            for (int i = 0; i < rows; ++i) {
                bool lhs = false;
                for (int j = 0; j < cols; ++j)
                    if (a.get(i, j) && k[j]) lhs = !lhs;
                CHECK_FALSE(lhs);
            }
        }
        CHECK(static_cast<int>(kernel.size()) == cols - a.rank());
    }
}
