#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <thread>

#include "iotacx/invariants.hpp"

using namespace iotacx;

namespace {

StandardParams params(std::initializer_list<std::pair<char, int>> l) {
    StandardParams p;
    for (auto [a, b] : l) p.pairs.push_back({a == '+' ? Sign::Plus : Sign::Minus, b});
    return p;
}

StandardParams randomParams(std::mt19937_64& rng, int maxSteps = 3, int maxB = 4) {
    StandardParams p;
    int steps = static_cast<int>(rng() % (maxSteps + 1));
    for (int s = 0; s < steps; ++s) {
        int b = 1 + static_cast<int>(rng() % maxB);
        p.pairs.push_back({(rng() & 1) ? Sign::Plus : Sign::Minus, (rng() & 1) ? b : -b});
    }
    return p;
}

}  // namespace

TEST_CASE("P invariant fixtures") {
    CHECK(pInvariant(params({{'+', 1}, {'-', -2}})) == 2);
    CHECK(pInvariant(StandardParams{}) == 0);
    CHECK(pInvariant(params({{'-', -2}})) == 3);
    // cross-check through the phi identity
    auto p = params({{'-', -2}});
    int viaPhi = 0;
    for (auto [n, v] : phiAll(p)) viaPhi += (-2 * n + 1) * v;
    CHECK(viaPhi == 3);
}

TEST_CASE("P_omega fixtures") {
    for (int k : {-4, -3, -2, -1, 1, 2, 3, 4}) {
        CHECK(pOmega(params({{'+', k}})) == 1);
        CHECK(pOmega(params({{'-', k}})) == -1);
    }
    CHECK(pOmega(StandardParams{}) == 0);
}

TEST_CASE("phi_n fixtures") {
    auto p = params({{'+', 1}, {'-', -2}});
    CHECK(phiN(p, 1) == 1);
    CHECK(phiN(p, 2) == -1);
    CHECK(phiN(StandardParams{}, 1) == 0);
    CHECK(phiN(StandardParams{}, 7) == 0);
    CHECK(phiN(params({{'+', 3}, {'+', 3}, {'-', -3}}), 3) == 1);
    CHECK_THROWS_AS(phiN(p, 0), std::invalid_argument);
}

TEST_CASE("P equals the signed phi sum everywhere") {
    std::mt19937_64 rng(59);
    for (int t = 0; t < 300; ++t) {
        auto p = randomParams(rng, 4, 5);
        int sum = 0;
        for (auto [n, v] : phiAll(p)) sum += (-2 * n + 1) * v;
        CHECK(pInvariant(p) == sum);
    }
}

TEST_CASE("shift on parameters") {
    CHECK(shStandard(params({{'+', -2}}), 1) == params({{'+', -3}}));
    CHECK(shStandard(params({{'+', -2}}), 5) == params({{'+', -2}}));
    CHECK_THROWS_AS(shStandard(StandardParams{}, 0), std::invalid_argument);
    SECTION("agrees with the precurve shift") {
        std::mt19937_64 rng(61);
        for (int t = 0; t < 40; ++t) {
            auto p = randomParams(rng);
            int n = 1 + static_cast<int>(rng() % 3);
            Precurve pc = toPrecurve(liftToR(buildStandard(p)));
            Precurve sh = shiftPrecurve(pc, n);
            SimplyFaced slid = slideArrows(orderStrands(simplyFace(sh)));
            StandardParams got = extractPrimitive(extractComponents(slid)).params;
            CHECK(got == shStandard(p, n));
        }
    }
    SECTION("P(sh_n C) = P(C) - 2 sum_{i >= n} phi_i") {
        std::mt19937_64 rng(67);
        for (int t = 0; t < 100; ++t) {
            auto p = randomParams(rng, 4, 5);
            int n = 1 + static_cast<int>(rng() % 4);
            int tail = 0;
            for (auto [i, v] : phiAll(p))
                if (i >= n) tail += v;
            CHECK(pInvariant(shStandard(p, n)) == pInvariant(p) - 2 * tail);
        }
    }
}

TEST_CASE("classification round trip via classify") {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 30; ++t) {
        auto p = randomParams(rng);
        CHECK(classify(buildStandard(p)) == p);
    }
}

TEST_CASE("locally_equivalent") {
    auto c = buildStandard(params({{'+', -2}}));
    auto cSum = directSum(c, acyclicArc(1, 0));
    CHECK(locallyEquivalent(c, cSum));
    CHECK_FALSE(locallyEquivalent(buildStandard(params({{'+', 1}})),
                                  buildStandard(params({{'-', 1}}))));
    auto r = reduce(cSum);
    CHECK(locallyEquivalent(cSum, r.reduced));
}

TEST_CASE("homomorphism additivity on random pairs") {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 40; ++t) {
        auto p1 = randomParams(rng), p2 = randomParams(rng);
        auto c1 = buildStandard(p1), c2 = buildStandard(p2);
        StandardParams prod = classify(product(c1, c2));
        CHECK(pInvariant(prod) == pInvariant(p1) + pInvariant(p2));
        CHECK(pOmega(prod) == pOmega(p1) + pOmega(p2));
        for (int n = 1; n <= 5; ++n) CHECK(phiN(prod, n) == phiN(p1, n) + phiN(p2, n));
    }
}

TEST_CASE("unit and associativity at the level of classes") {
    std::mt19937_64 rng(79);
    auto unit = buildStandard(StandardParams{});
    for (int t = 0; t < 10; ++t) {
        auto p = randomParams(rng, 2, 3);
        auto c = buildStandard(p);
        CHECK(classify(product(unit, c)) == classify(c));
        CHECK(classify(product(c, unit)) == classify(c));
    }
    for (int t = 0; t < 4; ++t) {
        auto a = buildStandard(randomParams(rng, 1, 2));
        auto b = buildStandard(randomParams(rng, 1, 2));
        auto c = buildStandard(randomParams(rng, 1, 2));
        CHECK(classify(product(product(a, b), c)) == classify(product(a, product(b, c))));
    }
}

TEST_CASE("shift compatibility with products") {
    std::mt19937_64 rng(83);
    for (int t = 0; t < 15; ++t) {
        auto p1 = randomParams(rng, 2, 3), p2 = randomParams(rng, 2, 3);
        int n = 1 + static_cast<int>(rng() % 3);
        auto lhs = classify(product(buildStandard(shStandard(p1, n)), buildStandard(shStandard(p2, n))));
        auto rhs = shStandard(classify(product(buildStandard(p1), buildStandard(p2))), n);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("twisted product classifies like the plain product") {
    std::mt19937_64 rng(89);
    for (int t = 0; t < 15; ++t) {
        auto p1 = randomParams(rng, 2, 3), p2 = randomParams(rng, 2, 3);
        AlmostIotaComplex viaTwisted = q2Reduce(twistedProduct(p1, p2));
        REQUIRE(validate(viaTwisted).ok());
        CHECK(classify(viaTwisted) == classify(product(buildStandard(p1), buildStandard(p2))));
    }
}

TEST_CASE("P_omega is independent of the phi family") {
    // fitting sum a_n phi_n against P_omega on C(+,k) forces a_n = 1, which
    // then disagrees on C(-,k)
    for (int k = 1; k <= 4; ++k) {
        auto plus = params({{'+', k}});
        CHECK(pOmega(plus) == 1);
        CHECK(phiN(plus, k) == 1);
        int fitted = 0;
        for (auto [n, v] : phiAll(plus)) fitted += v;  // a_n = 1 for all n
        CHECK(fitted == pOmega(plus));
        auto minus = params({{'-', k}});
        int fittedMinus = 0;
        for (auto [n, v] : phiAll(minus)) fittedMinus += v;
        CHECK(fittedMinus == 1);
        CHECK(pOmega(minus) == -1);
        CHECK(fittedMinus != pOmega(minus));
    }
}

TEST_CASE("grQ of the final generator is minus P_omega") {
    std::mt19937_64 rng(97);
    for (int t = 0; t < 100; ++t) {
        auto p = randomParams(rng, 4, 4);
        CHECK(naiveBigrading(p).back().second == -pOmega(p));
    }
}

TEST_CASE("invariant record carries the identity") {
    auto rec = invariantsOf(params({{'+', 1}, {'-', -2}}));
    CHECK(rec.P == 2);
    CHECK(rec.Pomega == 0);
    CHECK(rec.phi.at(1) == 1);
    CHECK(rec.phi.at(2) == -1);
}

TEST_CASE("pipelines run concurrently on distinct inputs") {
    std::vector<StandardParams> inputs;
    std::mt19937_64 rng(137);
    for (int i = 0; i < 8; ++i) inputs.push_back(randomParams(rng, 3, 4));
    std::vector<StandardParams> results(inputs.size());
    std::vector<std::thread> workers;
    for (size_t i = 0; i < inputs.size(); ++i)
        workers.emplace_back([&, i] { results[i] = classify(buildStandard(inputs[i])); });
    for (auto& w : workers) w.join();
    for (size_t i = 0; i < inputs.size(); ++i) CHECK(results[i] == inputs[i]);
}
