// Classification of almost iota-complexes and the integer homomorphisms
// P, P_omega, phi_n together with the shift endomorphisms sh_n.
#pragma once

#include <map>
#include <stdexcept>

#include "iotacx/complex.hpp"
#include "iotacx/slide.hpp"

namespace iotacx {

/// reduce -> lift -> precurve -> simply-faced -> ordered -> slid -> primitive readout.
inline StandardParams classify(const AlmostIotaComplex& c) {
    Reduction red = reduce(c);
    RComplex lifted = liftToR(red.reduced);
    Precurve pc = toPrecurve(lifted);
    SimplyFaced sf = simplyFace(pc);
    SimplyFaced ordered = orderStrands(sf);
    SimplyFaced slid = slideArrows(ordered);
    Multicurve mc = extractComponents(slid);
    return extractPrimitive(mc).params;
}

/// The full multicurve of a complex, for rendering and component counting.
inline Multicurve multicurveOf(const AlmostIotaComplex& c) {
    Reduction red = reduce(c);
    RComplex lifted = liftToR(red.reduced);
    SimplyFaced slid = slideArrows(orderStrands(simplyFace(toPrecurve(lifted))));
    return extractComponents(slid);
}

/// P: the U-grading of the final generator T_{2n}, equal to sum (-2i+1) phi_i.
inline int pInvariant(const StandardParams& p) {
    auto gr = naiveBigrading(p);
    return gr.back().first;
}

/// P_omega: #{a_i = +} - #{a_i = -}.
inline int pOmega(const StandardParams& p) {
    int v = 0;
    for (const auto& pr : p.pairs) v += (pr.a == Sign::Plus) ? 1 : -1;
    return v;
}

/// phi_n: #{b_i = n} - #{b_i = -n}, n >= 1.
inline int phiN(const StandardParams& p, int n) {
    if (n < 1) throw std::invalid_argument("phiN: n must be >= 1");
    int v = 0;
    for (const auto& pr : p.pairs) {
        if (pr.b == n) ++v;
        if (pr.b == -n) --v;
    }
    return v;
}

/// All nonzero phi values, sparse.
inline std::map<int, int> phiAll(const StandardParams& p) {
    std::map<int, int> out;
    for (const auto& pr : p.pairs) out[std::abs(pr.b)] += (pr.b > 0) ? 1 : -1;
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

/// sh_n on parameters: every |b| >= n moves one step away from zero.
inline StandardParams shStandard(const StandardParams& p, int n) {
    if (n < 1) throw std::invalid_argument("shStandard: n must be >= 1");
    StandardParams out = p;
    for (auto& pr : out.pairs)
        if (std::abs(pr.b) >= n) pr.b += (pr.b > 0) ? 1 : -1;
    return out;
}

/// Decide local equivalence through the canonical forms.
inline bool locallyEquivalent(const AlmostIotaComplex& c1, const AlmostIotaComplex& c2) {
    return classify(c1) == classify(c2);
}

struct InvariantRecord {
    StandardParams params;
    int P = 0;
    int Pomega = 0;
    std::map<int, int> phi;
};

inline InvariantRecord invariantsOf(const StandardParams& p) {
    InvariantRecord rec;
    rec.params = p;
    rec.P = pInvariant(p);
    rec.Pomega = pOmega(p);
    rec.phi = phiAll(p);
    int check = 0;
    for (const auto& [n, v] : rec.phi) check += (-2 * n + 1) * v;
    if (check != rec.P) throw std::logic_error("invariantsOf: P != sum (-2n+1) phi_n");
    return rec;
}

}  // namespace iotacx
