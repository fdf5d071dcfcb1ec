// Arithmetic in F2[U], F2[Q] and R = F2[U,Q]/(UQ), plus the coefficient text grammar.
#pragma once

#include <cassert>
#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iotacx {

enum class Var : uint8_t { U, Q };

inline char varName(Var v) { return v == Var::U ? 'U' : 'Q'; }

/// Polynomial over F2 in a single variable, bit per exponent, no trailing zeros.
/// The zero polynomial has empty support and no degree.
class F2Poly {
public:
    explicit F2Poly(Var v = Var::U) : var_(v) {}

    static F2Poly zero(Var v) { return F2Poly(v); }
    static F2Poly one(Var v) { return monomial(v, 0); }

    static F2Poly monomial(Var v, int exp) {
        checkExp(exp);
        F2Poly p(v);
        p.bits_.resize(static_cast<size_t>(exp) + 1, false);
        p.bits_[static_cast<size_t>(exp)] = true;
        return p;
    }

    Var var() const { return var_; }
    bool isZero() const { return bits_.empty(); }
    bool isOne() const { return bits_.size() == 1 && bits_[0]; }

    /// Degree of the top term; nullopt for the zero polynomial.
    std::optional<int> degree() const {
        if (bits_.empty()) return std::nullopt;
        return static_cast<int>(bits_.size()) - 1;
    }

    /// Smallest exponent with a nonzero coefficient; nullopt for zero.
    std::optional<int> minDegree() const {
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i]) return static_cast<int>(i);
        return std::nullopt;
    }

    bool coeff(int exp) const {
        if (exp < 0 || static_cast<size_t>(exp) >= bits_.size()) return false;
        return bits_[static_cast<size_t>(exp)];
    }

    void flipCoeff(int exp) {
        checkExp(exp);
        if (static_cast<size_t>(exp) >= bits_.size()) bits_.resize(static_cast<size_t>(exp) + 1, false);
        bits_[static_cast<size_t>(exp)] = !bits_[static_cast<size_t>(exp)];
        normalize();
    }

    bool isMonomial() const {
        if (bits_.empty()) return false;
        int count = 0;
        for (bool b : bits_) count += b;
        return count == 1;
    }

    int termCount() const {
        int count = 0;
        for (bool b : bits_) count += b;
        return count;
    }

    std::vector<int> exponents() const {
        std::vector<int> out;
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i]) out.push_back(static_cast<int>(i));
        return out;
    }

    F2Poly operator+(const F2Poly& o) const {
        requireSameVar(o);
        F2Poly out(var_);
        out.bits_.resize(std::max(bits_.size(), o.bits_.size()), false);
        for (size_t i = 0; i < out.bits_.size(); ++i)
            out.bits_[i] = (i < bits_.size() && bits_[i]) != (i < o.bits_.size() && o.bits_[i]);
        out.normalize();
        return out;
    }

    F2Poly& operator+=(const F2Poly& o) { return *this = *this + o; }

    F2Poly operator*(const F2Poly& o) const {
        requireSameVar(o);
        F2Poly out(var_);
        if (isZero() || o.isZero()) return out;
        size_t deg = (bits_.size() - 1) + (o.bits_.size() - 1);
        checkExp(static_cast<long long>(deg));
        out.bits_.resize(deg + 1, false);
        for (size_t i = 0; i < bits_.size(); ++i) {
            if (!bits_[i]) continue;
            for (size_t j = 0; j < o.bits_.size(); ++j)
                if (o.bits_[j]) out.bits_[i + j] = !out.bits_[i + j];
        }
        out.normalize();
        return out;
    }

    /// Multiply by var^k.
    F2Poly shifted(int k) const {
        assert(k >= 0);
        if (isZero()) return *this;
        checkExp(static_cast<long long>(bits_.size()) - 1 + k);
        F2Poly out(var_);
        out.bits_.assign(static_cast<size_t>(k), false);
        out.bits_.insert(out.bits_.end(), bits_.begin(), bits_.end());
        return out;
    }

    size_t hashValue() const { return std::hash<std::vector<bool>>()(bits_); }

    bool operator==(const F2Poly& o) const { return var_ == o.var_ && bits_ == o.bits_; }
    bool operator!=(const F2Poly& o) const { return !(*this == o); }

private:
    static void checkExp(long long exp) {
        if (exp < 0 || exp > std::numeric_limits<int32_t>::max() - 1)
            throw std::overflow_error("F2Poly: exponent out of range");
    }

    void requireSameVar(const F2Poly& o) const {
        if (var_ != o.var_) throw std::invalid_argument("F2Poly: mixed variables");
    }

    void normalize() {
        while (!bits_.empty() && !bits_.back()) bits_.pop_back();
    }

    Var var_;
    std::vector<bool> bits_;
};

/// Element of R = F2[U,Q]/(UQ), kept as constant + U-part + Q-part.
/// The U- and Q-parts always have zero constant term.
struct RElem {
    bool c = false;
    F2Poly u{Var::U};
    F2Poly q{Var::Q};

    RElem() = default;
    RElem(bool c_, F2Poly u_, F2Poly q_) : c(c_), u(std::move(u_)), q(std::move(q_)) {
        assert(!u.coeff(0) && !q.coeff(0));
        assert(u.var() == Var::U && q.var() == Var::Q);
    }

    static RElem zero() { return RElem{}; }
    static RElem one() { RElem r; r.c = true; return r; }

    static RElem U(int exp = 1) { return fromPoly(F2Poly::monomial(Var::U, exp)); }
    static RElem Q(int exp = 1) { return fromPoly(F2Poly::monomial(Var::Q, exp)); }

    /// Sort a polynomial in one variable into the invariant (c, u, q) shape.
    static RElem fromPoly(const F2Poly& p) {
        RElem r;
        r.c = p.coeff(0);
        F2Poly rest = p;
        if (r.c) rest.flipCoeff(0);
        if (p.var() == Var::U) r.u = rest; else r.q = rest;
        return r;
    }

    bool isZero() const { return !c && u.isZero() && q.isZero(); }
    bool isOne() const { return c && u.isZero() && q.isZero(); }

    /// U-part including the constant, as an element of F2[U].
    F2Poly uWithConstant() const {
        F2Poly p = u;
        if (c) p.flipCoeff(0);
        return p;
    }

    RElem operator+(const RElem& o) const {
        return RElem(c != o.c, u + o.u, q + o.q);
    }

    RElem operator*(const RElem& o) const {
        // (c1 + u1 + q1)(c2 + u2 + q2) with u*q = 0
        RElem r;
        r.c = c && o.c;
        F2Poly uPart = u * o.u;
        if (c) uPart += o.u;
        if (o.c) uPart += u;
        F2Poly qPart = q * o.q;
        if (c) qPart += o.q;
        if (o.c) qPart += q;
        r.u = uPart;
        r.q = qPart;
        return r;
    }

    bool operator==(const RElem& o) const { return c == o.c && u == o.u && q == o.q; }
    bool operator!=(const RElem& o) const { return !(*this == o); }
};

struct RSplit {
    bool c;
    F2Poly uPart;
    F2Poly qPart;
};

inline RSplit relemSplit(const RElem& x) { return {x.c, x.u, x.q}; }

inline RElem relemAssemble(const RSplit& s) { return RElem(s.c, s.uPart, s.qPart); }

// ---------------------------------------------------------------------------
// Coefficient grammar:  coeff := term ("+" term)* ; term := "0" | "1" | VAR ("^" NAT)?
// Canonical print: U-monomials ascending, then Q-monomials ascending, "+"-joined;
// constant printed as "1", zero as "0".
// ---------------------------------------------------------------------------

inline std::string printCoeff(const RElem& x) {
    if (x.isZero()) return "0";
    std::string out;
    auto emit = [&out](const std::string& term) {
        if (!out.empty()) out += "+";
        out += term;
    };
    if (x.c) emit("1");
    for (Var v : {Var::U, Var::Q}) {
        const F2Poly& p = (v == Var::U) ? x.u : x.q;
        for (int e : p.exponents()) {
            std::string t(1, varName(v));
            if (e != 1) t += "^" + std::to_string(e);
            emit(t);
        }
    }
    return out;
}

inline std::string printCoeff(const F2Poly& p) {
    return printCoeff(RElem::fromPoly(p));
}

struct CoeffParseError : std::runtime_error {
    size_t position;
    CoeffParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at offset " + std::to_string(pos)), position(pos) {}
};

inline RElem parseCoeff(std::string_view text) {
    RElem acc;
    size_t i = 0;
    auto skipSpace = [&] { while (i < text.size() && text[i] == ' ') ++i; };
    bool expectTerm = true;
    while (true) {
        skipSpace();
        if (i >= text.size()) {
            if (expectTerm) throw CoeffParseError("expected term", i);
            break;
        }
        if (!expectTerm) {
            if (text[i] != '+') throw CoeffParseError("expected '+'", i);
            ++i;
            expectTerm = true;
            continue;
        }
        char ch = text[i];
        if (ch == '0') {
            ++i;
        } else if (ch == '1') {
            acc = acc + RElem::one();
            ++i;
        } else if (ch == 'U' || ch == 'Q') {
            Var v = (ch == 'U') ? Var::U : Var::Q;
            ++i;
            long long exp = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i])))
                    throw CoeffParseError("expected exponent", i);
                exp = 0;
                while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
                    exp = exp * 10 + (text[i] - '0');
                    if (exp > std::numeric_limits<int32_t>::max() - 1)
                        throw CoeffParseError("exponent overflow", i);
                    ++i;
                }
            }
            if (exp == 0)
                acc = acc + RElem::one();
            else
                acc = acc + (v == Var::U ? RElem::U(static_cast<int>(exp)) : RElem::Q(static_cast<int>(exp)));
        } else {
            throw CoeffParseError("unexpected character", i);
        }
        expectTerm = false;
    }
    return acc;
}

/// Parse a coefficient restricted to one variable (plus constants).
inline F2Poly parseUPoly(std::string_view text) {
    RElem r = parseCoeff(text);
    if (!r.q.isZero()) throw CoeffParseError("Q term not allowed here", 0);
    return r.uWithConstant();
}

}  // namespace iotacx
