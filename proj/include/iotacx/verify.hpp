// Seeded property harness: runs the theorems' testable consequences on
// pseudo-random standard complexes. Deterministic for a fixed seed.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "iotacx/invariants.hpp"

namespace iotacx {

struct VerifyReport {
    uint64_t seed = 0;
    int trials = 0;
    struct Property {
        std::string name;
        int pass = 0;
        int fail = 0;
        std::string firstCounterexample;  // serialized inputs of the first failure
    };
    std::vector<Property> properties;

    bool allPass() const {
        for (const auto& p : properties)
            if (p.fail > 0) return false;
        return true;
    }
};

namespace detail {

inline StandardParams randomStandard(std::mt19937_64& rng, int maxSteps = 3, int maxB = 4) {
    std::uniform_int_distribution<int> stepDist(0, maxSteps), bDist(1, maxB), bit(0, 1);
    StandardParams p;
    int steps = stepDist(rng);
    for (int s = 0; s < steps; ++s) {
        int b = bDist(rng);
        p.pairs.push_back({bit(rng) ? Sign::Plus : Sign::Minus, bit(rng) ? b : -b});
    }
    return p;
}

}  // namespace detail

inline VerifyReport verifySuite(uint64_t seed, int trials) {
    if (trials < 1) throw std::invalid_argument("verifySuite: trials must be >= 1");
    VerifyReport rep;
    rep.seed = seed;
    rep.trials = trials;
    auto prop = [&rep](const std::string& name) -> VerifyReport::Property& {
        for (auto& p : rep.properties)
            if (p.name == name) return p;
        rep.properties.push_back({name, 0, 0, {}});
        return rep.properties.back();
    };
    auto record = [&](const std::string& name, bool ok, const std::string& counterexample) {
        auto& p = prop(name);
        if (ok) {
            ++p.pass;
        } else {
            ++p.fail;
            if (p.firstCounterexample.empty()) p.firstCounterexample = counterexample;
        }
    };

    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        StandardParams p1 = detail::randomStandard(rng);
        StandardParams p2 = detail::randomStandard(rng);
        int shiftN = 1 + t % 3;
        std::string inputs = printParams(p1) + " , " + printParams(p2);
        try {
            record("roundtrip_classification", classify(buildStandard(p1)) == p1, printParams(p1));
            StandardParams prod = classify(product(buildStandard(p1), buildStandard(p2)));
            record("P_additive", pInvariant(prod) == pInvariant(p1) + pInvariant(p2), inputs);
            record("Pomega_additive", pOmega(prod) == pOmega(p1) + pOmega(p2), inputs);
            bool phiOk = true;
            for (int n = 1; n <= 5; ++n)
                phiOk = phiOk && phiN(prod, n) == phiN(p1, n) + phiN(p2, n);
            record("phi_additive", phiOk, inputs);
            int sum = 0;
            for (auto [n, v] : phiAll(prod)) sum += (-2 * n + 1) * v;
            record("P_phi_identity", pInvariant(prod) == sum, printParams(prod));
            StandardParams lhs = classify(
                product(buildStandard(shStandard(p1, shiftN)), buildStandard(shStandard(p2, shiftN))));
            record("shift_compatibility", lhs == shStandard(prod, shiftN),
                   inputs + " , n=" + std::to_string(shiftN));
            record("unit_element", classify(product(buildStandard(StandardParams{}), buildStandard(p1))) == p1,
                   printParams(p1));
            record("pipeline_errors", true, "");
        } catch (const std::exception& e) {
            record("pipeline_errors", false, inputs + " : " + e.what());
        }
    }
    return rep;
}

}  // namespace iotacx
