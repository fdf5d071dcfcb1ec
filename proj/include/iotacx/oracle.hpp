// Brute-force verification of local equivalence on small complexes: the mod-U
// definitions implemented directly as F2 linear algebra plus bounded enumeration.
#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "iotacx/complex.hpp"

namespace iotacx {

struct SearchBudget {
    int maxGenerators = 7;
    int maxUDegree = 4;
    long maxSolutions = 4096;
};

enum class TriBool { False, True, Unknown };

struct LocalMapSearch {
    enum class Outcome { Found, None, Unknown } outcome = Outcome::Unknown;
    std::optional<ModUMap> map;
};

namespace detail {

inline F2Matrix atU1(const PolyMat& m) {
    F2Matrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j).termCount() % 2 == 1) out.set(i, j, true);
    return out;
}

/// A cycle spanning H(C | U=1); one-dimensional for validated complexes.
inline std::vector<bool> towerCycleAtU1(const F2Matrix& dU1) {
    std::vector<std::vector<bool>> kernel;
    std::vector<bool> zero(dU1.rows(), false);
    solveF2(dU1, zero, &kernel);
    for (const auto& k : kernel)
        if (!solveF2(dU1, k)) return k;  // not a boundary: generates the tower
    throw std::logic_error("towerCycleAtU1: no tower class found");
}

}  // namespace detail

/// Find a grading-preserving U-equivariant chain map f: C1 -> C2 with
/// f iota1 + iota2 f null-homotopic mod U and f an isomorphism on U-localized
/// homology. Gradings pin every entry degree, so the chain and commutator
/// conditions are one joint F2-linear system in the entries of (f, H); the
/// solution space is enumerated and the nonlinear tower condition tested per
/// solution. "None" is certified only when no entry was truncated at
/// budget.maxUDegree and the whole space was enumerated.
inline LocalMapSearch searchLocalMap(const AlmostIotaComplex& c1, const AlmostIotaComplex& c2,
                                     const SearchBudget& budget = {}) {
    {
        auto r1 = validate(c1), r2 = validate(c2);
        if (!r1.ok() || !r2.ok()) throw std::invalid_argument("searchLocalMap: invalid input");
    }
    LocalMapSearch res;
    if (c1.size() > budget.maxGenerators || c2.size() > budget.maxGenerators) {
        res.outcome = LocalMapSearch::Outcome::Unknown;
        return res;
    }
    const int n1 = c1.size(), n2 = c2.size();

    struct FSlot {
        int i, j, k;  // f[i][j] = U^k, k pinned by the gradings
    };
    std::vector<FSlot> fSlots;
    bool truncated = false;
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n1; ++j) {
            // f(e_j) = U^k e_i is grading preserving when gr(i) - 2k = gr(j)
            int diff = c2.gens[i].grU - c1.gens[j].grU;
            if (diff < 0 || diff % 2 != 0) continue;
            int k = diff / 2;
            if (k > budget.maxUDegree) {
                truncated = true;
                continue;
            }
            fSlots.push_back({i, j, k});
        }
    std::vector<std::pair<int, int>> hSlots;  // constant entries of H, degree +1
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n1; ++j)
            if (c2.gens[i].grU == c1.gens[j].grU + 1) hSlots.emplace_back(i, j);

    const int nf = static_cast<int>(fSlots.size());
    const int nUnk = nf + static_cast<int>(hSlots.size());

    // homogeneous equations keyed by (block, i, j, exponent)
    std::map<std::tuple<int, int, int, int>, std::vector<int>> eqs;
    auto addTerm = [&eqs](int block, int i, int j, int exp, int unknown) {
        eqs[{block, i, j, exp}].push_back(unknown);
    };
    for (int u = 0; u < nf; ++u) {
        auto [fi, fj, fk] = fSlots[u];
        // chain condition d2 f + f d1 = 0, every monomial coefficient
        for (int i = 0; i < n2; ++i)
            for (int a : c2.d.at(i, fi).exponents()) addTerm(0, i, fj, a + fk, u);
        for (int j = 0; j < n1; ++j)
            for (int a : c1.d.at(fj, j).exponents()) addTerm(0, fi, j, a + fk, u);
        // constant part of (f iota1 + iota2 f): degree-0 slots only
        if (fk == 0) {
            for (int j = 0; j < n1; ++j)
                if (c1.iota.at(fj, j).coeff(0)) addTerm(1, fi, j, 0, u);
            for (int i = 0; i < n2; ++i)
                if (c2.iota.at(i, fi).coeff(0)) addTerm(1, i, fj, 0, u);
        }
    }
    for (size_t h = 0; h < hSlots.size(); ++h) {
        auto [hi, hj] = hSlots[h];
        int u = nf + static_cast<int>(h);
        for (int j = 0; j < n1; ++j)
            if (c1.d.at(hj, j).coeff(0)) addTerm(1, hi, j, 0, u);
        for (int i = 0; i < n2; ++i)
            if (c2.d.at(i, hi).coeff(0)) addTerm(1, i, hj, 0, u);
    }

    F2Matrix sys(static_cast<int>(eqs.size()), nUnk);
    {
        int row = 0;
        for (const auto& [key, terms] : eqs) {
            for (int u : terms) sys.flip(row, u);
            ++row;
        }
    }
    std::vector<std::vector<bool>> kernel;
    std::vector<bool> zero(sys.rows(), false);
    solveF2(sys, zero, &kernel);

    // only the f-part of a solution matters (H never enters the tower test),
    // so enumerate a basis of the kernel projected to the f coordinates
    {
        std::vector<std::vector<bool>> basis;  // kept reduced with distinct leads
        std::vector<int> leads;
        for (const auto& k : kernel) {
            std::vector<bool> v(k.begin(), k.begin() + nf);
            for (size_t b = 0; b < basis.size(); ++b)
                if (v[leads[b]])
                    for (int j = 0; j < nf; ++j) v[j] = v[j] != static_cast<bool>(basis[b][j]);
            int lead = -1;
            for (int j = 0; j < nf; ++j)
                if (v[j]) { lead = j; break; }
            if (lead < 0) continue;
            for (size_t b = 0; b < basis.size(); ++b)
                if (basis[b][lead])
                    for (int j = 0; j < nf; ++j)
                        basis[b][j] = basis[b][j] != static_cast<bool>(v[j]);
            basis.push_back(std::move(v));
            leads.push_back(lead);
        }
        kernel = std::move(basis);
    }

    const int dim = static_cast<int>(kernel.size());
    F2Matrix d1u = detail::atU1(c1.d);
    F2Matrix d2u = detail::atU1(c2.d);
    std::vector<bool> tower = detail::towerCycleAtU1(d1u);

    const bool exhaustive = dim <= 20 && ((1L << dim) - 1) <= budget.maxSolutions;
    const unsigned long long combos =
        (dim == 0) ? 0
                   : (exhaustive ? ((1ULL << dim) - 1)
                                 : static_cast<unsigned long long>(budget.maxSolutions));
    for (unsigned long long code = 1; code <= combos; ++code) {
        std::vector<bool> x(nf, false);
        for (int b = 0; b < dim && b < 63; ++b)
            if ((code >> b) & 1)
                for (int u = 0; u < nf; ++u) x[u] = x[u] != static_cast<bool>(kernel[b][u]);
        // tower condition at U = 1: f(tower cycle) must not be a boundary
        std::vector<bool> w(n2, false);
        for (int u = 0; u < nf; ++u)
            if (x[u] && tower[fSlots[u].j]) w[fSlots[u].i] = !w[fSlots[u].i];
        bool nonzero = false;
        for (bool b : w) nonzero = nonzero || b;
        if (!nonzero || solveF2(d2u, w)) continue;
        ModUMap f;
        f.source = c1;
        f.target = c2;
        f.shift = 0;
        f.mat = PolyMat(n2, n1, Var::U);
        for (int u = 0; u < nf; ++u)
            if (x[u]) f.mat.at(fSlots[u].i, fSlots[u].j) += F2Poly::monomial(Var::U, fSlots[u].k);
        res.outcome = LocalMapSearch::Outcome::Found;
        res.map = std::move(f);
        return res;
    }
    const bool searchedAll = dim == 0 || exhaustive;
    res.outcome = (searchedAll && !truncated) ? LocalMapSearch::Outcome::None
                                              : LocalMapSearch::Outcome::Unknown;
    return res;
}

/// True iff grading-preserving local maps exist in both directions.
inline TriBool bruteforceLocalEquiv(const AlmostIotaComplex& c1, const AlmostIotaComplex& c2,
                                    const SearchBudget& budget = {}) {
    LocalMapSearch fwd = searchLocalMap(c1, c2, budget);
    if (fwd.outcome == LocalMapSearch::Outcome::None) return TriBool::False;
    LocalMapSearch bwd = searchLocalMap(c2, c1, budget);
    if (bwd.outcome == LocalMapSearch::Outcome::None) return TriBool::False;
    if (fwd.outcome == LocalMapSearch::Outcome::Found && bwd.outcome == LocalMapSearch::Outcome::Found)
        return TriBool::True;
    return TriBool::Unknown;
}

}  // namespace iotacx
