// Strand ordering, crossover-arrow sliding, and multicurve extraction.
//
// Every step is a basis change on one side of the arc: either a positive-length
// change (P untouched) or a constant one folded into P. The scheduler removes
// arrows whose strands diverge and keeps arrows between closed parallel strands
// as local-system decorations.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "iotacx/precurve.hpp"
#include "iotacx/standard.hpp"

namespace iotacx {

// ---------------------------------------------------------------------------
// lockstep traversal of two strands
// ---------------------------------------------------------------------------

struct Traversal {
    enum class Kind { Diverge, OpenEnd, Cycle } kind = Kind::OpenEnd;
    int depth = 0;  // face comparisons up to the divergence; first face is depth 1
    int cmp = 0;    // at a divergence: -1 when a sits below b in the strand order
    PointIncidence incA, incB;  // the two incidences at the divergence or open end
};

/// Whether an arrow from the strand with incidence `f` to the strand with
/// incidence `t` pops off at this divergence: directly when `f` has no in-arc
/// and `t` has no out-arc, by a positive absorption for two source arcs with
/// the shorter on the `f` side, and by the composite positive move for two
/// destination arcs with the longer on the `f` side.
inline bool popsAtDivergence(const PointIncidence& f, const PointIncidence& t) {
    using K = PointIncidence::Kind;
    if (f.kind == K::Src && t.kind == K::Src) return f.k < t.k;
    if (f.kind == K::Dst && t.kind == K::Dst) return f.k > t.k;
    return f.kind != K::Dst && t.kind != K::Src;
}

inline std::vector<int> inverseSigma(const std::vector<int>& sigma) {
    std::vector<int> inv(sigma.size());
    for (size_t c = 0; c < sigma.size(); ++c) inv[sigma[c]] = static_cast<int>(c);
    return inv;
}

inline std::vector<int> sigmaOf(const F2Matrix& p) { return lpuDecompose(p).sigma; }

/// Push an imaginary arrow between strands a and b and follow both in lockstep
/// until they diverge, end together, or close up. This is a lexicographic
/// comparison of the two strands' itineraries, so it is a total preorder.
inline Traversal compareStrands(const SimplyFaced& s, const std::vector<int>& sigma, int a, int b,
                                bool towardS1) {
    if (a == b) return {Traversal::Kind::Cycle, 0, 0, {}, {}};
    auto sigmaInv = inverseSigma(sigma);
    int pa = towardS1 ? a : sigma[a];
    int pb = towardS1 ? b : sigma[b];
    bool onU = towardS1;
    int depth = 1;
    std::set<std::tuple<int, int, bool>> visited;
    while (true) {
        if (!visited.insert({pa, pb, onU}).second) return {Traversal::Kind::Cycle, depth, 0, {}, {}};
        PointIncidence ia = onU ? s.uIncidence(pa) : s.qIncidence(pa);
        PointIncidence ib = onU ? s.uIncidence(pb) : s.qIncidence(pb);
        auto rank = [](const PointIncidence& p) {
            switch (p.kind) {
                case PointIncidence::Kind::None: return 0;
                case PointIncidence::Kind::Dst: return 1;
                case PointIncidence::Kind::Src: return 2;
            }
            return 0;
        };
        if (ia.kind == PointIncidence::Kind::None && ib.kind == PointIncidence::Kind::None)
            return {Traversal::Kind::OpenEnd, depth, 0, ia, ib};
        if (rank(ia) != rank(ib))
            return {Traversal::Kind::Diverge, depth, rank(ia) < rank(ib) ? -1 : 1, ia, ib};
        if (ia.k != ib.k)
            return {Traversal::Kind::Diverge, depth, ia.k < ib.k ? -1 : 1, ia, ib};
        pa = ia.partner;
        pb = ib.partner;
        if (onU) {
            pa = sigma[pa];
            pb = sigma[pb];
        } else {
            pa = sigmaInv[pa];
            pb = sigmaInv[pb];
        }
        onU = !onU;
        ++depth;
    }
}

inline bool closedParallel(const SimplyFaced& s, const std::vector<int>& sigma, int a, int b) {
    return compareStrands(s, sigma, a, b, true).kind == Traversal::Kind::Cycle;
}

/// Depth of a crossover arrow between two strands: nearest divergence in either
/// direction; nullopt (infinite) when the strands are parallel.
inline std::optional<int> arrowDepth(const SimplyFaced& s, const Transvection& arrow) {
    if (arrow.from < 0 || arrow.to < 0 || arrow.from >= s.size() || arrow.to >= s.size() ||
        arrow.from == arrow.to)
        throw std::invalid_argument("arrowDepth: arrow endpoints out of range");
    auto sigma = sigmaOf(s.pc.P);
    Traversal t1 = compareStrands(s, sigma, arrow.from, arrow.to, true);
    Traversal t2 = compareStrands(s, sigma, arrow.from, arrow.to, false);
    std::optional<int> best;
    if (t1.kind == Traversal::Kind::Diverge) best = t1.depth;
    if (t2.kind == Traversal::Kind::Diverge && (!best || t2.depth < *best)) best = t2.depth;
    return best;
}

// ---------------------------------------------------------------------------
// strand ordering
// ---------------------------------------------------------------------------

/// Sort strands by the divergence order (parallel strands tie, stable by index)
/// and relabel both sides so that the change-of-side permutation is trivial.
inline SimplyFaced orderStrands(const SimplyFaced& in) {
    const int n = in.size();
    auto sigma = sigmaOf(in.pc.P);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        Traversal t = compareStrands(in, sigma, a, b, true);
        return t.kind == Traversal::Kind::Diverge && t.cmp < 0;
    });
    std::vector<int> rho(n), tau(n);
    for (int pos = 0; pos < n; ++pos) {
        rho[order[pos]] = pos;
        tau[sigma[order[pos]]] = pos;
    }
    SimplyFaced out;
    out.pc.gens.resize(n);
    out.pc.dU = PolyMat(n, n, Var::U);
    out.pc.dQ = PolyMat(n, n, Var::Q);
    out.pc.P = F2Matrix(n, n);
    for (int i = 0; i < n; ++i) out.pc.gens[rho[i]] = in.pc.gens[i];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out.pc.dU.at(rho[i], rho[j]) = in.pc.dU.at(i, j);
            out.pc.dQ.at(tau[i], tau[j]) = in.pc.dQ.at(i, j);
            if (in.pc.P.get(i, j)) out.pc.P.set(tau[i], rho[j], true);
        }
    out.refreshMatchings();
    return out;
}

/// Elementary word of a precurve's P, kept derived rather than stored so that
/// it always multiplies out to P. Listed from the s1 end to the s2 end:
/// arrows near s1 first, then adjacent crossings realizing the permutation,
/// then arrows near s2.
inline std::vector<ElementaryMove> pwordOf(const F2Matrix& p) {
    LPU d = lpuDecompose(p);
    std::vector<ElementaryMove> word;
    for (auto it = d.upper.rbegin(); it != d.upper.rend(); ++it)
        word.push_back({ElementaryMove::Kind::Crossover, it->from, it->to});
    std::vector<int> perm = d.sigma;  // perm[col] = row
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = 0; j + 1 < static_cast<int>(perm.size()); ++j)
            if (perm[j] > perm[j + 1]) {
                std::swap(perm[j], perm[j + 1]);
                word.push_back({ElementaryMove::Kind::Crossing, j, j + 1});
                changed = true;
            }
    }
    for (auto it = d.lower.rbegin(); it != d.lower.rend(); ++it)
        word.push_back({ElementaryMove::Kind::Crossover, it->from, it->to});
    return word;
}

/// Multiply a word back out (for checking that a drawing realizes P).
/// The word lists factors from the s1 end, so entry 0 is applied first.
inline F2Matrix wordMatrix(int n, const std::vector<ElementaryMove>& word) {
    F2Matrix m = F2Matrix::identity(n);
    for (const auto& mv : word) {
        F2Matrix f(n, n);
        if (mv.kind == ElementaryMove::Kind::Crossover) {
            f = transvectionMatrix(n, {mv.i, mv.j});
        } else {
            f = F2Matrix::identity(n);
            f.set(mv.i, mv.i, false);
            f.set(mv.j, mv.j, false);
            f.set(mv.i, mv.j, true);
            f.set(mv.j, mv.i, true);
        }
        m = f * m;
    }
    return m;
}

// ---------------------------------------------------------------------------
// arrow sliding
// ---------------------------------------------------------------------------

namespace detail {

inline bool transvectionsCommute(const Transvection& a, const Transvection& b) {
    return a.from != b.to && b.from != a.to;
}

struct ArrowCandidate {
    Transvection e;  // indices are side-local: s1 points for S1, s2 points for S2
    Side side;
};

/// Arrow factors that can be commuted to the s1 end or the s2 end of the word.
inline std::vector<ArrowCandidate> reachableArrows(const LPU& lpu) {
    std::vector<ArrowCandidate> out;
    const auto& up = lpu.upper;
    const auto& lo = lpu.lower;
    const auto& sigma = lpu.sigma;
    auto sigmaInv = inverseSigma(sigma);
    for (size_t i = 0; i < up.size(); ++i) {
        bool toS1 = true;
        for (size_t j = i + 1; j < up.size(); ++j)
            if (!transvectionsCommute(up[i], up[j])) { toS1 = false; break; }
        if (toS1) out.push_back({up[i], Side::S1});
        bool leftEnd = true;
        for (size_t j = 0; j < i; ++j)
            if (!transvectionsCommute(up[i], up[j])) { leftEnd = false; break; }
        if (leftEnd) {
            Transvection conj{sigma[up[i].from], sigma[up[i].to]};
            bool throughL = true;
            for (const auto& l : lo)
                if (!transvectionsCommute(conj, l)) { throughL = false; break; }
            if (throughL) out.push_back({conj, Side::S2});
        }
    }
    for (size_t i = 0; i < lo.size(); ++i) {
        bool toS2 = true;
        for (size_t j = 0; j < i; ++j)
            if (!transvectionsCommute(lo[i], lo[j])) { toS2 = false; break; }
        if (toS2) out.push_back({lo[i], Side::S2});
        bool rightEnd = true;
        for (size_t j = i + 1; j < lo.size(); ++j)
            if (!transvectionsCommute(lo[i], lo[j])) { rightEnd = false; break; }
        if (rightEnd) {
            Transvection conj{sigmaInv[lo[i].from], sigmaInv[lo[i].to]};
            bool throughU = true;
            for (const auto& u : up)
                if (!transvectionsCommute(conj, u)) { throughU = false; break; }
            if (throughU) out.push_back({conj, Side::S1});
        }
    }
    return out;
}

/// Strand carrying a side-local point index.
inline int strandOfPoint(const std::vector<int>& sigmaInv, Side side, int point) {
    return side == Side::S1 ? point : sigmaInv[point];
}

inline size_t stateHash(const SimplyFaced& s) {
    size_t h = s.pc.P.hash();
    auto mix = [&h](size_t v) { h = h * 1000003u + v; };
    for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.size(); ++j) {
            for (int e : s.pc.dU.at(i, j).exponents())
                mix((static_cast<size_t>(i) << 24) ^ (static_cast<size_t>(j) << 12) ^ (e * 4 + 1));
            for (int e : s.pc.dQ.at(i, j).exponents())
                mix((static_cast<size_t>(i) << 24) ^ (static_cast<size_t>(j) << 12) ^ (e * 4 + 3));
        }
    return h;
}

inline void dropFactor(SimplyFaced& s, const ArrowCandidate& c) {
    F2Matrix t = transvectionMatrix(s.size(), c.e);
    if (c.side == Side::S1)
        s.pc.P = s.pc.P * t;
    else
        s.pc.P = t * s.pc.P;
}

/// Free removal: the face conjugation is a no-op because `from` has no in-arc
/// and `to` has no out-arc on this face.
inline bool freeRemovable(const SimplyFaced& s, const ArrowCandidate& c) {
    const auto inc = [&](int p) { return (c.side == Side::S1) ? s.uIncidence(p) : s.qIncidence(p); };
    PointIncidence f = inc(c.e.from), t = inc(c.e.to);
    bool fromOk = f.kind != PointIncidence::Kind::Dst;
    bool toOk = t.kind != PointIncidence::Kind::Src;
    return fromOk && toOk;
}

/// M2 slide across the face: both strands carry same-direction arcs of equal
/// length, so the arrow re-emerges between the far endpoints.
inline bool m2Applicable(const SimplyFaced& s, const ArrowCandidate& c, Transvection* next) {
    const auto inc = [&](int p) { return (c.side == Side::S1) ? s.uIncidence(p) : s.qIncidence(p); };
    PointIncidence f = inc(c.e.from), t = inc(c.e.to);
    if (f.kind == PointIncidence::Kind::None || f.kind != t.kind || f.k != t.k) return false;
    if (f.partner == c.e.to || t.partner == c.e.from || f.partner == t.partner) return false;
    if (next) *next = {f.partner, t.partner};
    return true;
}

/// Clean-up lemma preconditions for h = e + next over the face matrix.
inline void checkCleanupConditions(const PolyMat& face, const Transvection& e, const Transvection& next) {
    const int n = face.rows();
    PolyMat h(n, n, face.var());
    h.at(e.to, e.from) = F2Poly::one(face.var());
    h.at(next.to, next.from) = F2Poly::one(face.var());
    if (!(h * h).isZero()) throw std::runtime_error("M2: h^2 != 0");
    PolyMat dh = face * h + h * face;
    if (!(h * dh).isZero() || !(dh * h).isZero())
        throw std::runtime_error("M2: clean-up preconditions violated");
}

inline void applyFree(SimplyFaced& s, const ArrowCandidate& c) {
    PolyMat before = (c.side == Side::S1) ? s.pc.dU : s.pc.dQ;
    dropFactor(s, c);
    PolyMat& face = (c.side == Side::S1) ? s.pc.dU : s.pc.dQ;
    conjugateFace(face, c.e.from, c.e.to, 0);
    if (!(face == before)) throw std::logic_error("free removal changed the face");
}

inline void applyM2(SimplyFaced& s, const ArrowCandidate& c) {
    Transvection next;
    if (!m2Applicable(s, c, &next)) throw std::logic_error("M2 not applicable");
    PolyMat& face = (c.side == Side::S1) ? s.pc.dU : s.pc.dQ;
    checkCleanupConditions(face, c.e, next);
    dropFactor(s, c);
    conjugateFace(face, c.e.from, c.e.to, 0);
    conjugateFace(face, next.from, next.to, 0);
    F2Matrix a = transvectionMatrix(s.size(), next);
    if (c.side == Side::S1)
        s.pc.P = s.pc.P * a;
    else
        s.pc.P = a * s.pc.P;
    s.refreshMatchings();
}

/// Dissolve the arrow into its face and renormalize; constant fixes re-enter P
/// but re-creating the dissolved arrow immediately is forbidden.
inline void applyDetour(SimplyFaced& s, const ArrowCandidate& c) {
    dropFactor(s, c);
    PolyMat& face = (c.side == Side::S1) ? s.pc.dU : s.pc.dQ;
    conjugateFace(face, c.e.from, c.e.to, 0);
    faceReduce(face, s.pc.P, c.side, c.e);
    s.refreshMatchings();
}

}  // namespace detail

struct SlideBudgetExceeded : std::runtime_error {
    SlideBudgetExceeded() : std::runtime_error("slide budget exceeded") {}
};

namespace detail {

/// One greedy pass; `variant` selects the tie-break among equally urgent
/// actions, since the greedy search can corner itself under one fixed order.
inline SimplyFaced slideArrowsPass(const SimplyFaced& ordered, int variant) {
    SimplyFaced s = ordered;
    const int n = s.size();
    long totalLen = 0;
    for (const auto& a : s.uMatch) totalLen += a.k;
    for (const auto& a : s.qMatch) totalLen += a.k;
    long budget = std::max<long>(16L * std::max(n, 1), 16L * n * totalLen);

    std::unordered_set<size_t> seen;
    seen.insert(detail::stateHash(s));

    while (true) {
        LPU lpu = lpuDecompose(s.pc.P);
        auto sigmaInv = inverseSigma(lpu.sigma);
        bool liveArrow = false;
        for (const auto& a : lpu.upper)
            if (!closedParallel(s, lpu.sigma, a.from, a.to)) { liveArrow = true; break; }
        for (const auto& a : lpu.lower)
            if (!liveArrow &&
                !closedParallel(s, lpu.sigma, sigmaInv[a.from], sigmaInv[a.to]))
                liveArrow = true;
        if (!liveArrow) break;
        if (--budget < 0) throw SlideBudgetExceeded();

        auto candidates = detail::reachableArrows(lpu);
        // Route selection per arrow and direction: if the divergence ahead pops
        // this arrow (class 0), slide toward it, M2 step by step; a wrong-way
        // arrow (class 1) must be dissolved at its divergence, which rewires
        // the face and flips it so the other direction pops.
        // kind: 0 = free removal, 1 = M2 toward the divergence, 2 = detour
        struct Action {
            int cls;
            int depth;
            int kind;
            detail::ArrowCandidate cand;
        };
        std::vector<Action> actions;
        for (const auto& c : candidates) {
            int sa = detail::strandOfPoint(sigmaInv, c.side, c.e.from);
            int sb = detail::strandOfPoint(sigmaInv, c.side, c.e.to);
            if (closedParallel(s, lpu.sigma, sa, sb)) continue;
            Traversal t = compareStrands(s, lpu.sigma, sa, sb, c.side == Side::S1);
            if (t.kind == Traversal::Kind::Cycle) continue;  // parallel this way
            int cls = popsAtDivergence(t.incA, t.incB) ? 0 : 1;
            int kind;
            if (t.depth <= 1)
                kind = detail::freeRemovable(s, c) ? 0 : 2;
            else if (detail::m2Applicable(s, c, nullptr))
                kind = 1;
            else
                kind = 2;
            actions.push_back({cls, t.depth, kind, c});
        }
        std::stable_sort(actions.begin(), actions.end(), [variant](const Action& a, const Action& b) {
            if (a.cls != b.cls) return a.cls < b.cls;
            if (a.depth != b.depth) return a.depth < b.depth;
            if (a.kind != b.kind) return a.kind < b.kind;
            switch (variant) {
                case 0:
                    return false;  // keep the candidate enumeration order
                case 1:
                    if (a.cand.side != b.cand.side) return a.cand.side == Side::S1;
                    if (a.cand.e.from != b.cand.e.from) return a.cand.e.from < b.cand.e.from;
                    return a.cand.e.to < b.cand.e.to;
                case 2:
                    if (a.cand.side != b.cand.side) return a.cand.side == Side::S2;
                    if (a.cand.e.from != b.cand.e.from) return a.cand.e.from > b.cand.e.from;
                    return a.cand.e.to > b.cand.e.to;
                default:
                    if (a.cand.e.to != b.cand.e.to) return a.cand.e.to < b.cand.e.to;
                    return a.cand.e.from < b.cand.e.from;
            }
        });

        bool advanced = false;
        for (const auto& act : actions) {
            SimplyFaced trial = s;
            try {
                if (act.kind == 0)
                    detail::applyFree(trial, act.cand);
                else if (act.kind == 1)
                    detail::applyM2(trial, act.cand);
                else
                    detail::applyDetour(trial, act.cand);
            } catch (const std::runtime_error&) {
                continue;  // obstructed route; try another action
            }
            size_t h = detail::stateHash(trial);
            if (seen.count(h)) continue;
            seen.insert(h);
            s = std::move(trial);
            advanced = true;
            break;
        }
        if (advanced) continue;

        // Fallback one: dissolve a single factor at its own position. The
        // basis change is the factor conjugated through the part of the word
        // between it and its side, a rank-one modification of the identity.
        {
            LPU d2 = lpuDecompose(s.pc.P);
            for (Side side : {Side::S1, Side::S2}) {
                if (advanced) break;
                const auto& factors = (side == Side::S1) ? d2.upper : d2.lower;
                for (size_t i = 0; i < factors.size() && !advanced; ++i) {
                    F2Matrix conjPart = F2Matrix::identity(n);
                    if (side == Side::S1) {
                        for (size_t j = i + 1; j < factors.size(); ++j)
                            conjPart = conjPart * transvectionMatrix(n, factors[j]);
                    } else {
                        for (size_t j = 0; j < i; ++j)
                            conjPart = conjPart * transvectionMatrix(n, factors[j]);
                    }
                    auto inv = conjPart.inverse();
                    if (!inv) continue;
                    F2Matrix e(n, n);
                    e.set(factors[i].to, factors[i].from, true);
                    F2Matrix a = (side == Side::S1)
                                     ? F2Matrix::identity(n) + (*inv * e * conjPart)
                                     : F2Matrix::identity(n) + (conjPart * e * *inv);
                    SimplyFaced trial = s;
                    PolyMat& face = (side == Side::S1) ? trial.pc.dU : trial.pc.dQ;
                    Var v = face.var();
                    try {
                        face = embed(a, v) * face * embed(a, v);
                        if (side == Side::S1)
                            trial.pc.P = trial.pc.P * a;
                        else
                            trial.pc.P = a * trial.pc.P;
                        faceReduce(face, trial.pc.P, side);
                        trial.refreshMatchings();
                    } catch (const std::runtime_error&) {
                        continue;
                    }
                    size_t h = detail::stateHash(trial);
                    if (seen.count(h)) continue;
                    seen.insert(h);
                    s = std::move(trial);
                    advanced = true;
                }
            }
        }
        if (advanced) continue;

        // Fallback two: dissolve a whole triangular part and renormalize.
        for (Side side : {Side::S1, Side::S2}) {
            SimplyFaced trial = s;
            LPU d2 = lpuDecompose(trial.pc.P);
            const auto& factors = (side == Side::S1) ? d2.upper : d2.lower;
            if (factors.empty()) continue;
            PolyMat& face = (side == Side::S1) ? trial.pc.dU : trial.pc.dQ;
            try {
                if (side == Side::S1) {
                    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
                        trial.pc.P = trial.pc.P * transvectionMatrix(n, *it);
                        conjugateFace(face, it->from, it->to, 0);
                    }
                } else {
                    for (const auto& f : factors) {
                        trial.pc.P = transvectionMatrix(n, f) * trial.pc.P;
                        conjugateFace(face, f.from, f.to, 0);
                    }
                }
                faceReduce(face, trial.pc.P, side);
                trial.refreshMatchings();
            } catch (const std::runtime_error&) {
                continue;
            }
            size_t h = detail::stateHash(trial);
            if (!seen.count(h)) {
                seen.insert(h);
                s = std::move(trial);
                advanced = true;
                break;
            }
        }
        if (!advanced) throw SlideBudgetExceeded();
    }
    return s;
}

}  // namespace detail

/// Iteratively remove crossover arrows whose strands diverge, sliding each
/// arrow toward its nearest divergence: an M2 step in that direction strictly
/// decreases the arrow's depth, and at depth one the arrow either pops off or
/// is dissolved into the face and renormalized, rewiring the matchings. Arrows
/// between closed parallel strands survive as decorations. Throws
/// SlideBudgetExceeded when every tie-break variant hits the iteration cap
/// 16 n (total arc length).
inline SimplyFaced slideArrows(const SimplyFaced& ordered) {
    for (int variant = 0; variant < 3; ++variant) {
        try {
            return detail::slideArrowsPass(ordered, variant);
        } catch (const SlideBudgetExceeded&) {
        }
    }
    return detail::slideArrowsPass(ordered, 3);
}

// ---------------------------------------------------------------------------
// multicurve extraction
// ---------------------------------------------------------------------------

struct CurveSegment {
    Var face = Var::U;
    int power = 1;
    bool forward = true;  // arc traversed from its src to its dst
};

struct CurveComponent {
    enum class End { UPuncture, QPuncture, Closed };
    std::vector<int> strands;            // s1-point indices in traversal order
    std::vector<CurveSegment> segments;  // between consecutive strands; closed curves wrap
    End start = End::Closed;
    End finish = End::Closed;
    int copies = 1;                   // parallel multiplicity of the family
    F2Matrix decoration = F2Matrix::identity(1);
    std::vector<int> familyStrands;   // all strands of the parallel family

    bool open() const { return start != End::Closed; }
};

struct Multicurve {
    std::vector<CurveComponent> components;
    std::vector<Generator> gens;
    F2Matrix P;
    std::vector<int> sigma;
    std::vector<FaceArc> uMatch;
    std::vector<FaceArc> qMatch;

    int size() const { return static_cast<int>(gens.size()); }
};

/// Decompose the slid precurve into decorated components.
inline Multicurve extractComponents(const SimplyFaced& s) {
    const int n = s.size();
    Multicurve mc;
    mc.gens = s.pc.gens;
    mc.P = s.pc.P;
    mc.uMatch = s.uMatch;
    mc.qMatch = s.qMatch;
    LPU lpu = lpuDecompose(s.pc.P);
    mc.sigma = lpu.sigma;
    const auto& sigma = mc.sigma;
    auto sigmaInv = inverseSigma(sigma);

    for (const auto& a : lpu.upper)
        if (!closedParallel(s, sigma, a.from, a.to))
            throw std::logic_error("extractComponents: live crossover arrow left over");
    for (const auto& a : lpu.lower)
        if (!closedParallel(s, sigma, sigmaInv[a.from], sigmaInv[a.to]))
            throw std::logic_error("extractComponents: live crossover arrow left over");

    std::vector<bool> usedStrand(n, false);

    auto walk = [&](int startStrand, bool enterFromU) {
        CurveComponent comp;
        int strand = startStrand;
        bool fromU = enterFromU;
        while (true) {
            comp.strands.push_back(strand);
            usedStrand[strand] = true;
            if (fromU) {
                PointIncidence inc = s.qIncidence(sigma[strand]);
                if (inc.kind == PointIncidence::Kind::None) {
                    comp.finish = CurveComponent::End::QPuncture;
                    return comp;
                }
                comp.segments.push_back({Var::Q, inc.k, inc.kind == PointIncidence::Kind::Src});
                strand = sigmaInv[inc.partner];
                fromU = false;
            } else {
                PointIncidence inc = s.uIncidence(strand);
                if (inc.kind == PointIncidence::Kind::None) {
                    comp.finish = CurveComponent::End::UPuncture;
                    return comp;
                }
                comp.segments.push_back({Var::U, inc.k, inc.kind == PointIncidence::Kind::Src});
                strand = inc.partner;
                fromU = true;
            }
            if (strand == startStrand && fromU == enterFromU) {
                comp.start = comp.finish = CurveComponent::End::Closed;
                return comp;
            }
        }
    };

    for (int i = 0; i < n; ++i) {
        if (usedStrand[i] || s.uIncidence(i).kind != PointIncidence::Kind::None) continue;
        CurveComponent c = walk(i, true);
        c.start = CurveComponent::End::UPuncture;
        c.familyStrands = c.strands;
        mc.components.push_back(std::move(c));
    }
    for (int i = 0; i < n; ++i) {
        if (usedStrand[i] || s.qIncidence(sigma[i]).kind != PointIncidence::Kind::None) continue;
        CurveComponent c = walk(i, false);
        c.start = CurveComponent::End::QPuncture;
        c.familyStrands = c.strands;
        mc.components.push_back(std::move(c));
    }
    for (int i = 0; i < n; ++i) {
        if (usedStrand[i]) continue;
        CurveComponent c = walk(i, true);
        c.start = c.finish = CurveComponent::End::Closed;
        c.familyStrands = c.strands;
        mc.components.push_back(std::move(c));
    }

    // group closed components into parallel families and compute decorations
    std::vector<CurveComponent> grouped;
    std::vector<bool> taken(mc.components.size(), false);
    F2Matrix pinv = *s.pc.P.inverse();
    for (size_t i = 0; i < mc.components.size(); ++i) {
        if (taken[i]) continue;
        CurveComponent lead = mc.components[i];
        taken[i] = true;
        if (lead.open()) {
            grouped.push_back(std::move(lead));
            continue;
        }
        std::vector<int> cls;
        for (int t = 0; t < n; ++t)
            if (closedParallel(s, sigma, lead.strands[0], t)) cls.push_back(t);
        std::sort(cls.begin(), cls.end());
        std::vector<int> family = lead.strands;
        for (size_t j = i + 1; j < mc.components.size(); ++j) {
            if (taken[j] || mc.components[j].open()) continue;
            for (int t : cls)
                if (std::find(mc.components[j].strands.begin(), mc.components[j].strands.end(), t) !=
                    mc.components[j].strands.end()) {
                    taken[j] = true;
                    family.insert(family.end(), mc.components[j].strands.begin(),
                                  mc.components[j].strands.end());
                    break;
                }
        }
        const int m = static_cast<int>(cls.size());
        // holonomy of the change-of-side data around the family, cut at the
        // sorted class on the s1 side
        F2Matrix x = F2Matrix::identity(m);
        std::vector<int> cur = cls;
        int guard = 0;
        while (true) {
            if (++guard > 8 * n + 8) throw std::logic_error("decoration holonomy failed to close");
            // cross N(a) forward (s1 -> s2)
            {
                F2Matrix block(m, m);
                for (int col = 0; col < m; ++col)
                    for (int row = 0; row < m; ++row)
                        block.set(row, col, s.pc.P.get(sigma[cur[row]], cur[col]));
                x = block * x;
                for (int& v : cur) v = sigma[v];
            }
            // Q arcs
            for (int& v : cur) {
                PointIncidence inc = s.qIncidence(v);
                if (inc.kind == PointIncidence::Kind::None)
                    throw std::logic_error("decoration walk hit a puncture");
                v = inc.partner;
            }
            // cross N(a) backward (s2 -> s1)
            {
                F2Matrix block(m, m);
                for (int col = 0; col < m; ++col)
                    for (int row = 0; row < m; ++row)
                        block.set(row, col, pinv.get(sigmaInv[cur[row]], cur[col]));
                x = block * x;
                for (int& v : cur) v = sigmaInv[v];
            }
            // U arcs
            for (int& v : cur) {
                PointIncidence inc = s.uIncidence(v);
                if (inc.kind == PointIncidence::Kind::None)
                    throw std::logic_error("decoration walk hit a puncture");
                v = inc.partner;
            }
            std::vector<int> sortedCur = cur;
            std::sort(sortedCur.begin(), sortedCur.end());
            if (sortedCur == cls) break;
        }
        if (!x.inverse()) throw std::logic_error("decoration is singular");
        lead.copies = m;
        lead.decoration = x;
        lead.familyStrands = std::move(family);
        grouped.push_back(std::move(lead));
    }
    mc.components = std::move(grouped);

    std::stable_sort(mc.components.begin(), mc.components.end(), [](const auto& a, const auto& b) {
        auto key = [](const CurveComponent& c) {
            int hasU = (c.start == CurveComponent::End::UPuncture ||
                        c.finish == CurveComponent::End::UPuncture)
                           ? 0
                           : 1;
            int minStrand =
                c.strands.empty() ? 0 : *std::min_element(c.strands.begin(), c.strands.end());
            return std::pair<int, int>(hasU, minStrand);
        };
        return key(a) < key(b);
    });
    return mc;
}

// ---------------------------------------------------------------------------
// primitive extraction and readout
// ---------------------------------------------------------------------------

struct PrimitiveCurve {
    StandardParams params;
    std::vector<int> generatorsInOrder;  // strand indices from the U end
    int initial = 0;                     // x_i: the U-puncture end
    int final = 0;                       // x_f: the Q-puncture end
    std::vector<Generator> gens;         // slot data, bigradings when present
};

/// Walk gamma_0 from the U puncture and read off the standard parameters.
inline StandardParams readoutStandard(const CurveComponent& comp) {
    if (comp.start != CurveComponent::End::UPuncture || comp.finish != CurveComponent::End::QPuncture)
        throw std::invalid_argument("readoutStandard: not a U-to-Q curve");
    if (comp.strands.size() % 2 == 0)
        throw std::invalid_argument("readoutStandard: even generator count");
    StandardParams p;
    for (size_t i = 0; i + 1 < comp.strands.size(); i += 2) {
        const CurveSegment& qseg = comp.segments[i];
        const CurveSegment& useg = comp.segments[i + 1];
        if (qseg.face != Var::Q || useg.face != Var::U)
            throw std::invalid_argument("readoutStandard: malformed alternation");
        if (qseg.power != 1) throw std::invalid_argument("readoutStandard: Q power exceeds 1");
        // Q edge T_i -- T_{i+1}: arc from T_i into T_{i+1} sets omega T_i = T_{i+1}, i.e. a = -
        Sign a = qseg.forward ? Sign::Minus : Sign::Plus;
        // U edge T_{i+1} -- T_{i+2}: arc from T_{i+1} sets d T_{i+1} = U^k T_{i+2}, i.e. b = -k
        int b = useg.forward ? -useg.power : useg.power;
        p.pairs.push_back({a, b});
    }
    return p;
}

/// The unique undecorated component running from the U puncture to the Q puncture.
inline PrimitiveCurve extractPrimitive(const Multicurve& mc) {
    const CurveComponent* prim = nullptr;
    int uEnds = 0;
    for (const auto& c : mc.components) {
        int ends = (c.start == CurveComponent::End::UPuncture) +
                   (c.finish == CurveComponent::End::UPuncture);
        uEnds += ends;
        if (ends > 0 && !prim) prim = &c;
    }
    if (uEnds != 1 || !prim)
        throw std::invalid_argument("extractPrimitive: expected exactly one U-puncture end, found " +
                                    std::to_string(uEnds));
    if (prim->finish != CurveComponent::End::QPuncture)
        throw std::logic_error("extractPrimitive: primitive curve does not reach the Q puncture");
    if (prim->copies != 1 || !prim->decoration.isIdentity())
        throw std::logic_error("extractPrimitive: primitive curve carries a decoration");
    PrimitiveCurve out;
    out.params = readoutStandard(*prim);
    out.generatorsInOrder = prim->strands;
    out.initial = prim->strands.front();
    out.final = prim->strands.back();
    for (int i : prim->strands) out.gens.push_back(mc.gens[i]);
    return out;
}

}  // namespace iotacx
