// Precurves on the twice-punctured disk: the functors F and G, simply-faced
// normalization by certified basis changes, puncture counting, and shifts.
#pragma once

#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <string>
#include <vector>

#include "iotacx/rcomplex.hpp"

namespace iotacx {

enum class Side { S1, S2 };  // S1 faces the U-puncture, S2 the Q-puncture

struct ElementaryMove {
    enum class Kind { Crossing, Crossover };
    Kind kind = Kind::Crossing;
    int i = 0;  // crossing: swaps positions (i, i+1); crossover: arrow source strand
    int j = 0;  // crossover: arrow target strand (row j += row i in P)
};

/// Face differentials dU (side s1) and dQ (side s2) joined by the invertible
/// change-of-side matrix P : s1-coordinates -> s2-coordinates.
/// Entry (i, j) of a face matrix is the coefficient of point i in delta(point j).
struct Precurve {
    std::vector<Generator> gens;  // slot names; grQ set when a bigrading is attached
    PolyMat dU;                   // over F2[U], zero constant terms
    PolyMat dQ;                   // over F2[Q], zero constant terms
    F2Matrix P;                   // ground truth; the elementary word is re-derived from it

    int size() const { return static_cast<int>(gens.size()); }
};

struct FaceArc {
    int src = 0;
    int dst = 0;
    int k = 1;  // delta(src) contains U^k (or Q^k) times dst
    bool operator==(const FaceArc&) const = default;
};

struct PointIncidence {
    enum class Kind { None, Src, Dst } kind = Kind::None;
    int k = 0;
    int partner = -1;
};

/// Extract the matching of a face matrix; nullopt when not in matching form.
inline std::optional<std::vector<FaceArc>> matchingOf(const PolyMat& m) {
    const int n = m.rows();
    std::vector<int> rowCount(n, 0), colCount(n, 0);
    std::vector<FaceArc> arcs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const F2Poly& p = m.at(i, j);
            if (p.isZero()) continue;
            if (!p.isMonomial()) return std::nullopt;
            if (++rowCount[i] > 1 || ++colCount[j] > 1) return std::nullopt;
            arcs.push_back({j, i, *p.degree()});
        }
    // a point may not carry two incidences (would contradict d^2 = 0)
    std::vector<int> inc(n, 0);
    for (const auto& a : arcs) {
        if (++inc[a.src] > 1 || ++inc[a.dst] > 1) return std::nullopt;
    }
    return arcs;
}

inline PointIncidence incidenceOf(const std::vector<FaceArc>& arcs, int point) {
    for (const auto& a : arcs) {
        if (a.src == point) return {PointIncidence::Kind::Src, a.k, a.dst};
        if (a.dst == point) return {PointIncidence::Kind::Dst, a.k, a.src};
    }
    return {};
}

/// Precurve whose faces are matchings; carries the derived arc lists.
struct SimplyFaced {
    Precurve pc;
    std::vector<FaceArc> uMatch;
    std::vector<FaceArc> qMatch;

    int size() const { return pc.size(); }

    void refreshMatchings() {
        auto u = matchingOf(pc.dU), q = matchingOf(pc.dQ);
        if (!u || !q) throw std::logic_error("SimplyFaced: face matrix lost matching form");
        uMatch = std::move(*u);
        qMatch = std::move(*q);
    }

    PointIncidence uIncidence(int p) const { return incidenceOf(uMatch, p); }
    PointIncidence qIncidence(int p) const { return incidenceOf(qMatch, p); }
};

// ---------------------------------------------------------------------------
// functors F and G
// ---------------------------------------------------------------------------

/// F: split the reduced differential into its U-face and Q-face parts, P = identity.
inline Precurve toPrecurve(const RComplex& m) {
    if (m.hasConstantEntries()) throw std::invalid_argument("toPrecurve: delta has constant entries");
    const int n = m.size();
    Precurve out;
    out.gens = m.gens;
    out.dU = PolyMat(n, n, Var::U);
    out.dQ = PolyMat(n, n, Var::Q);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out.dU.at(i, j) = m.delta.at(i, j).u;
            out.dQ.at(i, j) = m.delta.at(i, j).q;
        }
    out.P = F2Matrix::identity(n);
    return out;
}

/// G: delta = dU + P^-1 dQ P.
inline RComplex fromPrecurve(const Precurve& pc) {
    const int n = pc.size();
    auto pinv = pc.P.inverse();
    if (!pinv) throw std::invalid_argument("fromPrecurve: P is singular");
    PolyMat qPart = embed(*pinv, Var::Q) * pc.dQ * embed(pc.P, Var::Q);
    RComplex out;
    out.gens = pc.gens;
    out.delta = RMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RElem e;
            e.u = pc.dU.at(i, j);
            e.q = qPart.at(i, j);
            if (e.u.coeff(0) || e.q.coeff(0)) throw std::logic_error("fromPrecurve: constant part appeared");
            out.delta.at(i, j) = e;
        }
    if (!(out.delta * out.delta).isZero()) throw std::logic_error("fromPrecurve: delta^2 != 0");
    return out;
}

// ---------------------------------------------------------------------------
// face reduction: certified basis changes bringing a face matrix to matching form
// ---------------------------------------------------------------------------

/// Conjugate m by A = I + U^t e[to][from] (a single basis change on one side).
inline void conjugateFace(PolyMat& m, int from, int to, int t) {
    const int n = m.rows();
    F2Poly mult = F2Poly::monomial(m.var(), t);
    // row `to` += U^t row `from`; col `from` += U^t col `to`; corner term
    std::vector<F2Poly> rowFrom(n, F2Poly(m.var())), colTo(n, F2Poly(m.var()));
    for (int j = 0; j < n; ++j) rowFrom[j] = m.at(from, j);
    for (int i = 0; i < n; ++i) colTo[i] = m.at(i, to);
    for (int j = 0; j < n; ++j)
        if (!rowFrom[j].isZero()) m.at(to, j) += rowFrom[j] * mult;
    for (int i = 0; i < n; ++i)
        if (!colTo[i].isZero()) m.at(i, from) += colTo[i] * mult;
    if (!rowFrom[to].isZero()) m.at(to, from) += rowFrom[to] * mult * mult;
}

/// Record of one constant basis change applied during face reduction.
struct ConstMove {
    Transvection t;
};

/// Reduce one face matrix to matching form by basis changes on its side.
/// Positive-length changes leave P alone; constant changes multiply into P.
/// `forbidden` (when set) names a transvection that must not be re-created,
/// used right after an arrow has been dissolved into this face.
inline void faceReduce(PolyMat& m, F2Matrix& p, Side side, std::optional<Transvection> forbidden = std::nullopt,
                       std::vector<ConstMove>* log = nullptr) {
    const int n = m.rows();
    auto applyConst = [&](int from, int to) {
        conjugateFace(m, from, to, 0);
        F2Matrix a = transvectionMatrix(n, {from, to});
        p = (side == Side::S1) ? p * a : a * p;
        if (log) log->push_back({{from, to}});
    };
    auto isForbidden = [&](int from, int to) {
        return forbidden && forbidden->from == from && forbidden->to == to;
    };

    auto faceHash = [&]() {
        size_t h = p.hash();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const F2Poly& e = m.at(i, j);
                if (e.isZero()) continue;
                h = h * 1000003u + (static_cast<size_t>(i) * n + j) * 31 + e.hashValue();
            }
        return h;
    };
    std::unordered_set<size_t> states;
    long iterations = 0;
    const long cap = 64L * n * n + 256;
    while (true) {
        if (++iterations > cap) throw std::runtime_error("faceReduce: iteration cap exceeded");
        if (!states.insert(faceHash()).second)
            throw std::runtime_error("faceReduce: cycle detected");
        // term counts per line
        std::vector<int> rowCount(n, 0), colCount(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int t = m.at(i, j).termCount();
                rowCount[i] += t;
                colCount[j] += t;
            }
        // pivot: minimal (degree, row, col) among terms on violated lines
        int pi = -1, pj = -1, pm = -1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const F2Poly& e = m.at(i, j);
                if (e.isZero()) continue;
                if (rowCount[i] <= 1 && colCount[j] <= 1 && e.isMonomial()) continue;
                int deg = *e.minDegree();
                if (pm < 0 || deg < pm || (deg == pm && (i < pi || (i == pi && j < pj)))) {
                    pi = i;
                    pj = j;
                    pm = deg;
                }
            }
        if (pm < 0) return;  // matching form reached
        if (!m.at(pi, pj).isMonomial())
            throw std::runtime_error("faceReduce: non-monomial entry cannot be matched");

        // clear column pj, then row pi, re-entering the outer loop after each change
        bool acted = false;
        for (int k = 0; k < n && !acted; ++k) {
            if (k == pi || m.at(k, pj).isZero()) continue;
            int e = *m.at(k, pj).minDegree();
            int t = e - pm;
            if (t < 0) throw std::logic_error("faceReduce: pivot was not minimal");
            if (t > 0) {
                conjugateFace(m, pi, k, t);  // row k += U^t row pi
            } else if (!isForbidden(pi, k)) {
                applyConst(pi, k);
            } else {
                applyConst(k, pi);  // alternate: absorb the pivot instead, pivot swaps to (k, pj)
            }
            acted = true;
        }
        if (acted) continue;
        for (int l = 0; l < n && !acted; ++l) {
            if (l == pj || m.at(pi, l).isZero()) continue;
            int e = *m.at(pi, l).minDegree();
            int t = e - pm;
            if (t < 0) throw std::logic_error("faceReduce: pivot was not minimal");
            if (t > 0) {
                conjugateFace(m, l, pj, t);  // col l += U^t col pj
            } else if (!isForbidden(l, pj)) {
                applyConst(l, pj);
            } else {
                applyConst(pj, l);
            }
            acted = true;
        }
        if (!acted) {
            // pivot entry itself is multi-term with clean lines: cannot happen on
            // monomial-homogeneous inputs
            throw std::runtime_error("faceReduce: stuck on a multi-term entry");
        }
    }
}

/// Independent Gaussian elimination on both faces; constant moves fold into P.
inline SimplyFaced simplyFace(const Precurve& in) {
    SimplyFaced out;
    out.pc = in;
    faceReduce(out.pc.dU, out.pc.P, Side::S1);
    faceReduce(out.pc.dQ, out.pc.P, Side::S2);
    out.refreshMatchings();
    return out;
}

// ---------------------------------------------------------------------------
// puncture counting and shifts
// ---------------------------------------------------------------------------

/// Number of side-points not met by any arc on the given face; equals the rank
/// of U^-1 H (resp. Q^-1 H) of the corresponding quotient complex.
inline int homologyRank(const Precurve& pc, Var face) {
    SimplyFaced s = simplyFace(pc);
    const auto& arcs = (face == Var::U) ? s.uMatch : s.qMatch;
    int matched = 2 * static_cast<int>(arcs.size());
    return s.size() - matched;
}

inline int homologyRank(const SimplyFaced& s, Var face) {
    const auto& arcs = (face == Var::U) ? s.uMatch : s.qMatch;
    return s.size() - 2 * static_cast<int>(arcs.size());
}

/// sh_n: every U-power m >= n becomes m + 1; dQ and P untouched.
inline Precurve shiftPrecurve(const Precurve& in, int n) {
    if (n < 1) throw std::invalid_argument("shiftPrecurve: n must be >= 1");
    Precurve out = in;
    for (int i = 0; i < in.size(); ++i)
        for (int j = 0; j < in.size(); ++j) {
            const F2Poly& e = in.dU.at(i, j);
            if (e.isZero()) continue;
            F2Poly shifted(Var::U);
            for (int k : e.exponents())
                shifted += F2Poly::monomial(Var::U, k >= n ? k + 1 : k);
            out.dU.at(i, j) = shifted;
        }
    if (!(out.dU * out.dU).isZero()) throw std::logic_error("shiftPrecurve: dU^2 != 0 after shift");
    return out;
}

}  // namespace iotacx
