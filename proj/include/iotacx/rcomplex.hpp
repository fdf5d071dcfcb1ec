// Type D structures over R = F2[U,Q]/(UQ): lifts of almost iota-complexes,
// Q^2-reduction, and the twisted tensor product with its product bigrading.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "iotacx/complex.hpp"

namespace iotacx {

/// Square matrix over R.
class RMat {
public:
    RMat() = default;
    RMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const RElem& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    RElem& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool isZero() const {
        for (const auto& x : a_)
            if (!x.isZero()) return false;
        return true;
    }

    RMat operator+(const RMat& o) const {
        RMat out = *this;
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = out.a_[i] + o.a_[i];
        return out;
    }

    RMat operator*(const RMat& o) const {
        RMat out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k).isZero()) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    if (o.at(k, j).isZero()) continue;
                    out.at(i, j) = out.at(i, j) + at(i, k) * o.at(k, j);
                }
            }
        return out;
    }

    bool operator==(const RMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<RElem> a_;
};

/// Free type D structure over R; delta squares to zero with UQ = 0.
struct RComplex {
    std::vector<Generator> gens;
    RMat delta;

    int size() const { return static_cast<int>(gens.size()); }

    bool hasConstantEntries() const {
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j)
                if (delta.at(i, j).c) return true;
        return false;
    }
};

/// delta = d + Q * (constant part of omega). Requires a reduced input so that
/// delta^2 = 0; the U-positive part of omega does not survive multiplication by Q.
inline RComplex liftToR(const AlmostIotaComplex& c) {
    if (!c.isReduced()) throw std::invalid_argument("liftToR: complex is not reduced");
    const int n = c.size();
    RComplex out;
    out.gens = c.gens;
    out.delta = RMat(n, n);
    F2Matrix om = c.omega().constPart();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RElem e = RElem::fromPoly(c.d.at(i, j));
            if (om.get(i, j)) e = e + RElem::Q(1);
            out.delta.at(i, j) = e;
        }
    if (!(out.delta * out.delta).isZero()) throw std::logic_error("liftToR: delta^2 != 0");
    return out;
}

/// Reads d from the U-and-constant part and omega from the Q-linear part;
/// higher Q powers are discarded by definition.
inline AlmostIotaComplex q2Reduce(const RComplex& m) {
    const int n = m.size();
    AlmostIotaComplex out;
    out.gens = m.gens;
    out.d = PolyMat(n, n, Var::U);
    PolyMat om(n, n, Var::U);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const RElem& e = m.delta.at(i, j);
            out.d.at(i, j) = e.uWithConstant();
            if (e.q.coeff(1)) om.at(i, j) = F2Poly::one(Var::U);
        }
    out.iota = om + PolyMat::identity(n, Var::U);
    return out;
}

/// Right-module differential of the twisted tensor product of two standard complexes:
/// delta = (d1 x 1 + 1 x d2) + (omega1 x 1 + 1 x omega2) Q, with the product bigrading.
inline RComplex twistedProduct(const StandardParams& p1, const StandardParams& p2) {
    AlmostIotaComplex c1 = buildStandard(p1);
    AlmostIotaComplex c2 = buildStandard(p2);
    const int n1 = c1.size(), n2 = c2.size(), n = n1 * n2;
    auto idx = [n2](int i, int j) { return i * n2 + j; };
    RComplex out;
    out.gens.reserve(n);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            Generator g;
            g.name = c1.gens[i].name + "*" + c2.gens[j].name;
            g.grU = c1.gens[i].grU + c2.gens[j].grU;
            g.grQ = *c1.gens[i].grQ + *c2.gens[j].grQ;
            out.gens.push_back(std::move(g));
        }
    out.delta = RMat(n, n);
    F2Matrix om1 = c1.omega().constPart(), om2 = c2.omega().constPart();
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            for (int k = 0; k < n1; ++k)
                if (!c1.d.at(k, i).isZero())
                    out.delta.at(idx(k, j), idx(i, j)) =
                        out.delta.at(idx(k, j), idx(i, j)) + RElem::fromPoly(c1.d.at(k, i));
            for (int l = 0; l < n2; ++l)
                if (!c2.d.at(l, j).isZero())
                    out.delta.at(idx(i, l), idx(i, j)) =
                        out.delta.at(idx(i, l), idx(i, j)) + RElem::fromPoly(c2.d.at(l, j));
            for (int k = 0; k < n1; ++k)
                if (om1.get(k, i))
                    out.delta.at(idx(k, j), idx(i, j)) = out.delta.at(idx(k, j), idx(i, j)) + RElem::Q(1);
            for (int l = 0; l < n2; ++l)
                if (om2.get(l, j))
                    out.delta.at(idx(i, l), idx(i, j)) = out.delta.at(idx(i, l), idx(i, j)) + RElem::Q(1);
        }
    if (!(out.delta * out.delta).isZero()) throw std::logic_error("twistedProduct: delta^2 != 0");
    return out;
}

/// Every delta entry must drop exactly one of the two bigradings:
/// U^a parts need (grU(i), grQ(i)) = (grU(j) + 2a - 1, grQ(j)), the constant a=0 included;
/// Q parts need (grU(j), grQ(j) + 1).
inline bool deltaBigradingHomogeneous(const RComplex& m) {
    const int n = m.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const RElem& e = m.delta.at(i, j);
            if (!m.gens[i].grQ || !m.gens[j].grQ) {
                if (!e.isZero()) return false;
                continue;
            }
            int ui = m.gens[i].grU, qi = *m.gens[i].grQ;
            int uj = m.gens[j].grU, qj = *m.gens[j].grQ;
            for (int a : e.uWithConstant().exponents())
                if (ui != uj + 2 * a - 1 || qi != qj) return false;
            for (int b : e.q.exponents())
                if (b != 1 || ui != uj || qi != qj + 1) return false;
        }
    return true;
}

}  // namespace iotacx
