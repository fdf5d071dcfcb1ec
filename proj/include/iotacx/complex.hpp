// Almost iota-complexes: construction, validation, reduction, products.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iotacx/coeff.hpp"
#include "iotacx/f2.hpp"
#include "iotacx/standard.hpp"

namespace iotacx {

struct Generator {
    std::string name;
    int grU = 0;
    std::optional<int> grQ;
    bool operator==(const Generator&) const = default;
};

/// Square matrix over F2[var].
class PolyMat {
public:
    PolyMat() = default;
    PolyMat(int rows, int cols, Var v = Var::U)
        : rows_(rows), cols_(cols), var_(v), a_(static_cast<size_t>(rows) * cols, F2Poly(v)) {}

    static PolyMat identity(int n, Var v = Var::U) {
        PolyMat m(n, n, v);
        for (int i = 0; i < n; ++i) m.at(i, i) = F2Poly::one(v);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Var var() const { return var_; }

    const F2Poly& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    F2Poly& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool isZero() const {
        for (const auto& p : a_)
            if (!p.isZero()) return false;
        return true;
    }

    PolyMat operator+(const PolyMat& o) const {
        PolyMat out = *this;
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
        return out;
    }

    PolyMat operator*(const PolyMat& o) const {
        PolyMat out(rows_, o.cols_, var_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k).isZero()) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    if (o.at(k, j).isZero()) continue;
                    out.at(i, j) += at(i, k) * o.at(k, j);
                }
            }
        return out;
    }

    F2Matrix constPart() const {
        F2Matrix m(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j).coeff(0)) m.set(i, j, true);
        return m;
    }

    F2Matrix support() const {
        F2Matrix m(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!at(i, j).isZero()) m.set(i, j, true);
        return m;
    }

    PolyMat submatrix(const std::vector<int>& rowIdx, const std::vector<int>& colIdx) const {
        PolyMat out(static_cast<int>(rowIdx.size()), static_cast<int>(colIdx.size()), var_);
        for (size_t i = 0; i < rowIdx.size(); ++i)
            for (size_t j = 0; j < colIdx.size(); ++j)
                out.at(static_cast<int>(i), static_cast<int>(j)) = at(rowIdx[i], colIdx[j]);
        return out;
    }

    bool operator==(const PolyMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && var_ == o.var_ && a_ == o.a_;
    }

private:
    int rows_ = 0, cols_ = 0;
    Var var_ = Var::U;
    std::vector<F2Poly> a_;
};

inline PolyMat embed(const F2Matrix& m, Var v) {
    PolyMat out(m.rows(), m.cols(), v);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.get(i, j)) out.at(i, j) = F2Poly::one(v);
    return out;
}

/// A graded free F2[U] complex with the mod-U involution iota-bar.
/// Entry (i,j) of d is the coefficient of gens[i] in the differential of gens[j].
struct AlmostIotaComplex {
    std::vector<Generator> gens;
    PolyMat d;     // over F2[U]
    PolyMat iota;  // over F2[U]

    int size() const { return static_cast<int>(gens.size()); }

    PolyMat omega() const { return iota + PolyMat::identity(size(), Var::U); }

    int indexOf(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (gens[i].name == name) return i;
        return -1;
    }

    bool isReduced() const { return d.constPart() == F2Matrix(size(), size()); }
};

/// Map of F2[U] complexes considered mod U; `shift` is its grading degree.
struct ModUMap {
    AlmostIotaComplex source;
    AlmostIotaComplex target;
    PolyMat mat;  // over F2[U]; mat[i][j] = coeff of target.gens[i] in image of source.gens[j]
    int shift = 0;
};

// ---------------------------------------------------------------------------
// naive bigrading and standard complexes
// ---------------------------------------------------------------------------

/// gr(T0) = (0,0); omega-edges move grQ by 1, U^b-edges move grU by 2|b|-1.
inline std::vector<std::pair<int, int>> naiveBigrading(const StandardParams& p) {
    p.check();
    std::vector<std::pair<int, int>> gr;
    gr.emplace_back(0, 0);
    for (size_t s = 0; s < p.pairs.size(); ++s) {
        const auto& [a, b] = p.pairs[s];
        auto [prevU, prevQ] = gr.back();
        // omega edge: T_{2s} -- T_{2s+1}
        gr.emplace_back(prevU, a == Sign::Plus ? prevQ - 1 : prevQ + 1);
        // differential edge: T_{2s+1} -- T_{2s+2}
        auto [pu, pq] = gr.back();
        int k = std::abs(b);
        gr.emplace_back(b > 0 ? pu - 2 * k + 1 : pu + 2 * k - 1, pq);
    }
    return gr;
}

/// Builds the zig-zag complex of the given parameters, bigraded and validated by construction.
inline AlmostIotaComplex buildStandard(const StandardParams& p) {
    p.check();
    const int n = static_cast<int>(p.pairs.size());
    const int size = 2 * n + 1;
    AlmostIotaComplex c;
    auto gr = naiveBigrading(p);
    for (int i = 0; i < size; ++i)
        c.gens.push_back({"T" + std::to_string(i), gr[i].first, gr[i].second});
    c.d = PolyMat(size, size, Var::U);
    PolyMat om(size, size, Var::U);
    for (int s = 0; s < n; ++s) {
        int odd = 2 * s + 1;   // index of T_{2s+1}
        int even = 2 * s + 2;  // index of T_{2s+2}
        if (p.pairs[s].a == Sign::Plus)
            om.at(odd - 1, odd) = F2Poly::one(Var::U);  // omega T_odd = T_{odd-1}
        else
            om.at(odd, odd - 1) = F2Poly::one(Var::U);  // omega T_{odd-1} = T_odd
        int b = p.pairs[s].b;
        if (b > 0)
            c.d.at(even - 1, even) = F2Poly::monomial(Var::U, b);  // dT_even = U^b T_{even-1}
        else
            c.d.at(even, even - 1) = F2Poly::monomial(Var::U, -b);  // dT_{even-1} = U^{|b|} T_even
    }
    c.iota = om + PolyMat::identity(size, Var::U);
    return c;
}

// ---------------------------------------------------------------------------
// homotopy mod U
// ---------------------------------------------------------------------------

/// Search for H with constant part of (f + g + H d + d' H) zero, H of degree shift+1.
/// Only the constant part of H can contribute, so this is an F2 linear system.
inline std::optional<ModUMap> homotopicModU(const ModUMap& f, const ModUMap& g) {
    if (f.source.size() != g.source.size() || f.target.size() != g.target.size() || f.shift != g.shift)
        throw std::invalid_argument("homotopicModU: shape mismatch");
    const int nt = f.target.size(), ns = f.source.size();
    F2Matrix rhsM = (f.mat + g.mat).constPart();
    F2Matrix dSrc = f.source.d.constPart();
    F2Matrix dTgt = f.target.d.constPart();

    // unknowns: entries (i,j) of H with grU_t(i) == grU_s(j) + shift + 1
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j)
            if (f.target.gens[i].grU == f.source.gens[j].grU + f.shift + 1) slots.emplace_back(i, j);
    const int nUnk = static_cast<int>(slots.size());

    F2Matrix sys(nt * ns, nUnk);
    std::vector<bool> rhs(static_cast<size_t>(nt) * ns, false);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j)
            rhs[static_cast<size_t>(i) * ns + j] = rhsM.get(i, j);
    for (int u = 0; u < nUnk; ++u) {
        auto [hi, hj] = slots[u];
        // (H dSrc)[hi][j] picks up H[hi][hj] when dSrc[hj][j] = 1
        for (int j = 0; j < ns; ++j)
            if (dSrc.get(hj, j)) sys.flip(hi * ns + j, u);
        // (dTgt H)[i][hj] picks up H[hi][hj] when dTgt[i][hi] = 1
        for (int i = 0; i < nt; ++i)
            if (dTgt.get(i, hi)) sys.flip(i * ns + hj, u);
    }
    auto sol = solveF2(sys, rhs);
    if (!sol) return std::nullopt;
    ModUMap h;
    h.source = f.source;
    h.target = f.target;
    h.shift = f.shift + 1;
    h.mat = PolyMat(nt, ns, Var::U);
    for (int u = 0; u < nUnk; ++u)
        if ((*sol)[u]) h.mat.at(slots[u].first, slots[u].second) = F2Poly::one(Var::U);
    return h;
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    std::optional<ModUMap> iotaSquaredWitness;
    std::vector<int> towerGenerators;  // indices surviving support cancellation

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    }
    const ValidationCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

struct ValidateOptions {
    bool requireEvenTower = true;
};

/// Support-matrix cancellation: repeatedly cancel a matched pair, return survivors.
/// On a grading-homogeneous complex this computes the free rank of H_* over F2[U].
inline std::vector<int> supportCancelSurvivors(const F2Matrix& support) {
    const int n = support.rows();
    F2Matrix m = support;
    std::vector<bool> gone(n, false);
    while (true) {
        int pi = -1, pj = -1;
        for (int i = 0; i < n && pi < 0; ++i) {
            if (gone[i]) continue;
            for (int j = 0; j < n; ++j)
                if (!gone[j] && m.get(i, j)) { pi = i; pj = j; break; }
        }
        if (pi < 0) break;
        for (int k = 0; k < n; ++k) {
            if (gone[k] || k == pi || k == pj || !m.get(k, pj)) continue;
            for (int l = 0; l < n; ++l)
                if (!gone[l] && l != pi && l != pj && m.get(pi, l)) m.flip(k, l);
        }
        gone[pi] = gone[pj] = true;
    }
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (!gone[i]) out.push_back(i);
    return out;
}

inline ValidationReport validate(const AlmostIotaComplex& c, const ValidateOptions& opts = {}) {
    ValidationReport rep;
    const int n = c.size();
    auto add = [&rep](std::string name, bool pass, std::string msg = "") {
        rep.checks.push_back({std::move(name), pass, std::move(msg)});
    };

    {
        bool unique = true;
        for (int i = 0; i < n && unique; ++i)
            for (int j = i + 1; j < n; ++j)
                if (c.gens[i].name == c.gens[j].name) { unique = false; break; }
        add("names_unique", unique, unique ? "" : "duplicate generator names");
    }

    bool shapeOk = c.d.rows() == n && c.d.cols() == n && c.iota.rows() == n && c.iota.cols() == n;
    add("shape", shapeOk, shapeOk ? "" : "matrix dimensions disagree with generator count");
    if (!shapeOk) return rep;

    add("d_squared_zero", (c.d * c.d).isZero());

    // d entries U^k need grU(i) = grU(j) - 1 + 2k; iota entries need grU(i) = grU(j) + 2k.
    bool homD = true, homI = true;
    std::string msgD, msgI;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int k : c.d.at(i, j).exponents())
                if (c.gens[i].grU != c.gens[j].grU - 1 + 2 * k && homD) {
                    homD = false;
                    msgD = "entry (" + c.gens[i].name + "," + c.gens[j].name + ") breaks homogeneity";
                }
            for (int k : c.iota.at(i, j).exponents())
                if (c.gens[i].grU != c.gens[j].grU + 2 * k && homI) {
                    homI = false;
                    msgI = "entry (" + c.gens[i].name + "," + c.gens[j].name + ") breaks homogeneity";
                }
        }
    add("grading_d", homD, msgD);
    add("grading_iota", homI, msgI);

    {
        PolyMat comm = c.d * c.iota + c.iota * c.d;
        bool pass = comm.constPart() == F2Matrix(n, n);
        add("commutator_mod_U", pass, pass ? "" : "d iota + iota d has a constant part");
    }

    {
        ModUMap f{c, c, c.iota * c.iota, 0};
        ModUMap g{c, c, PolyMat::identity(n, Var::U), 0};
        auto w = homotopicModU(f, g);
        add("iota_squared_mod_U", w.has_value(), w ? "" : "no homotopy witness for iota^2 = id mod U");
        rep.iotaSquaredWitness = std::move(w);
    }

    {
        rep.towerGenerators = supportCancelSurvivors(c.d.support());
        bool pass = rep.towerGenerators.size() == 1;
        std::string msg;
        if (!pass) msg = "expected 1 surviving tower generator, found " + std::to_string(rep.towerGenerators.size());
        add("single_tower", pass, msg);
        if (pass) {
            bool even = c.gens[rep.towerGenerators[0]].grU % 2 == 0;
            if (opts.requireEvenTower)
                add("tower_even_grading", even, even ? "" : "tower generator sits in odd grading");
            else
                add("tower_even_grading", true, even ? "" : "warning: tower generator sits in odd grading");
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// reduction
// ---------------------------------------------------------------------------

struct Reduction {
    AlmostIotaComplex reduced;
    ModUMap to;    // original -> reduced
    ModUMap from;  // reduced -> original
};

/// Cancel constant differential entries pairwise, transferring iota by conjugation
/// with (1 + dh) / (1 + hd). Pivot: lowest (row, col) constant entry.
/// The output iota is the constant-part representative of its mod-U class.
inline Reduction reduce(const AlmostIotaComplex& input) {
    {
        auto rep = validate(input);
        if (!rep.ok()) throw std::invalid_argument("reduce: input fails validation");
    }
    AlmostIotaComplex cur = input;
    const int n0 = input.size();
    PolyMat toTotal = PolyMat::identity(n0, Var::U);    // cur <- input coordinates
    PolyMat fromTotal = PolyMat::identity(n0, Var::U);  // input <- cur coordinates

    while (true) {
        const int n = cur.size();
        int pi = -1, pj = -1;
        for (int i = 0; i < n && pi < 0; ++i)
            for (int j = 0; j < n; ++j)
                if (cur.d.at(i, j).coeff(0)) { pi = i; pj = j; break; }
        if (pi < 0) break;

        // h sends the cancelled target gen pi back to the source gen pj
        PolyMat h(n, n, Var::U);
        h.at(pj, pi) = F2Poly::one(Var::U);
        PolyMat one = PolyMat::identity(n, Var::U);
        PolyMat dh = cur.d * h, hd = h * cur.d;
        PolyMat dNew = cur.d + cur.d * h * cur.d;
        PolyMat iotaNew = (one + dh) * cur.iota * (one + hd);
        PolyMat toStep = one + dh;    // then project off {pi, pj}
        PolyMat fromStep = one + hd;  // after including from survivors

        std::vector<int> keep;
        for (int i = 0; i < n; ++i)
            if (i != pi && i != pj) keep.push_back(i);
        std::vector<Generator> gens;
        for (int i : keep) gens.push_back(cur.gens[i]);
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;

        AlmostIotaComplex next;
        next.gens = std::move(gens);
        next.d = dNew.submatrix(keep, keep);
        next.iota = iotaNew.submatrix(keep, keep);

        toTotal = toStep.submatrix(keep, all) * toTotal;
        fromTotal = fromTotal * fromStep.submatrix(all, keep);
        cur = std::move(next);

        auto rep = validate(cur);
        if (!rep.ok()) throw std::logic_error("reduce: almost-iota axioms lost during cancellation");
    }

    // keep only the constant part of iota: the mod-U representative of the same class
    PolyMat iotaConst = embed(cur.iota.constPart(), Var::U);
    cur.iota = iotaConst;
    if (!((cur.omega().constPart() * cur.omega().constPart()) == F2Matrix(cur.size(), cur.size())))
        throw std::logic_error("reduce: omega^2 != 0 mod U on reduced output");

    Reduction out;
    out.to = ModUMap{input, cur, std::move(toTotal), 0};
    out.from = ModUMap{cur, input, std::move(fromTotal), 0};
    out.reduced = std::move(cur);
    return out;
}

// ---------------------------------------------------------------------------
// tensor product
// ---------------------------------------------------------------------------

/// d = d1 x 1 + 1 x d2, iota = iota1 x iota2, gradings additive.
inline AlmostIotaComplex product(const AlmostIotaComplex& c1, const AlmostIotaComplex& c2) {
    {
        auto r1 = validate(c1), r2 = validate(c2);
        if (!r1.ok() || !r2.ok()) throw std::invalid_argument("product: invalid input complex");
    }
    const int n1 = c1.size(), n2 = c2.size();
    const int n = n1 * n2;
    AlmostIotaComplex out;
    out.gens.reserve(n);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            Generator g;
            g.name = c1.gens[i].name + "*" + c2.gens[j].name;
            g.grU = c1.gens[i].grU + c2.gens[j].grU;
            if (c1.gens[i].grQ && c2.gens[j].grQ) g.grQ = *c1.gens[i].grQ + *c2.gens[j].grQ;
            out.gens.push_back(std::move(g));
        }
    auto idx = [n2](int i, int j) { return i * n2 + j; };
    out.d = PolyMat(n, n, Var::U);
    out.iota = PolyMat(n, n, Var::U);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            for (int k = 0; k < n1; ++k)
                if (!c1.d.at(k, i).isZero()) out.d.at(idx(k, j), idx(i, j)) += c1.d.at(k, i);
            for (int l = 0; l < n2; ++l)
                if (!c2.d.at(l, j).isZero()) out.d.at(idx(i, l), idx(i, j)) += c2.d.at(l, j);
            for (int k = 0; k < n1; ++k) {
                if (c1.iota.at(k, i).isZero()) continue;
                for (int l = 0; l < n2; ++l)
                    if (!c2.iota.at(l, j).isZero())
                        out.iota.at(idx(k, l), idx(i, j)) += c1.iota.at(k, i) * c2.iota.at(l, j);
            }
        }
    return out;
}

/// Direct sum; the tower is expected to live in `a`.
inline AlmostIotaComplex directSum(const AlmostIotaComplex& a, const AlmostIotaComplex& b) {
    const int na = a.size(), nb = b.size(), n = na + nb;
    AlmostIotaComplex out;
    out.gens = a.gens;
    for (const auto& g : b.gens) out.gens.push_back(g);
    out.d = PolyMat(n, n, Var::U);
    out.iota = PolyMat(n, n, Var::U);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            out.d.at(i, j) = a.d.at(i, j);
            out.iota.at(i, j) = a.iota.at(i, j);
        }
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
            out.d.at(na + i, na + j) = b.d.at(i, j);
            out.iota.at(na + i, na + j) = b.iota.at(i, j);
        }
    return out;
}

/// The acyclic two-step complex x -> U^k y with identity involution, gradings starting at `grTop`.
inline AlmostIotaComplex acyclicArc(int k, int grTop = 0, const std::string& prefix = "a") {
    AlmostIotaComplex c;
    c.gens.push_back({prefix + "x", grTop, std::nullopt});
    c.gens.push_back({prefix + "y", grTop - 1 + 2 * k, std::nullopt});
    c.d = PolyMat(2, 2, Var::U);
    c.d.at(1, 0) = F2Poly::monomial(Var::U, k);
    c.iota = PolyMat::identity(2, Var::U);
    return c;
}

}  // namespace iotacx
