// Dense linear algebra over F2 with bit-packed rows.
#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace iotacx {

/// Matrix over F2, rows packed into 64-bit words.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64),
          bits_(static_cast<size_t>(rows) * static_cast<size_t>(words_ == 0 ? 1 : words_), 0) {
        assert(rows >= 0 && cols >= 0);
        if (words_ == 0) words_ = 1;
    }

    static F2Matrix identity(int n) {
        F2Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const {
        return ((bits_[idx(r) + (c >> 6)] >> (c & 63)) & 1) != 0;
    }

    void set(int r, int c, bool v) {
        uint64_t& w = bits_[idx(r) + (c >> 6)];
        uint64_t mask = uint64_t(1) << (c & 63);
        if (v) w |= mask; else w &= ~mask;
    }

    void flip(int r, int c) { bits_[idx(r) + (c >> 6)] ^= uint64_t(1) << (c & 63); }

    /// row r += row s
    void addRow(int r, int s) {
        for (int w = 0; w < words_; ++w) bits_[idx(r) + w] ^= bits_[idx(s) + w];
    }

    void swapRows(int r, int s) {
        if (r == s) return;
        for (int w = 0; w < words_; ++w) std::swap(bits_[idx(r) + w], bits_[idx(s) + w]);
    }

    bool rowEmpty(int r) const {
        for (int w = 0; w < words_; ++w)
            if (bits_[idx(r) + w]) return false;
        return true;
    }

    bool operator==(const F2Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
    }
    bool operator!=(const F2Matrix& o) const { return !(*this == o); }

    F2Matrix operator*(const F2Matrix& o) const {
        assert(cols_ == o.rows_);
        F2Matrix out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k)
                if (get(i, k)) out.addRow(i, k, o);
        return out;
    }

    F2Matrix operator+(const F2Matrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        F2Matrix out = *this;
        for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= o.bits_[i];
        return out;
    }

    F2Matrix transposed() const {
        F2Matrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (get(i, j)) out.set(j, i, true);
        return out;
    }

    int rank() const {
        F2Matrix m = *this;
        int r = 0;
        for (int c = 0; c < m.cols_ && r < m.rows_; ++c) {
            int piv = -1;
            for (int i = r; i < m.rows_; ++i)
                if (m.get(i, c)) { piv = i; break; }
            if (piv < 0) continue;
            m.swapRows(r, piv);
            for (int i = 0; i < m.rows_; ++i)
                if (i != r && m.get(i, c)) m.addRow(i, r);
            ++r;
        }
        return r;
    }

    /// Gauss-Jordan inverse; nullopt when singular.
    std::optional<F2Matrix> inverse() const {
        assert(rows_ == cols_);
        F2Matrix m = *this;
        F2Matrix inv = identity(rows_);
        for (int c = 0; c < cols_; ++c) {
            int piv = -1;
            for (int i = c; i < rows_; ++i)
                if (m.get(i, c)) { piv = i; break; }
            if (piv < 0) return std::nullopt;
            m.swapRows(c, piv);
            inv.swapRows(c, piv);
            for (int i = 0; i < rows_; ++i)
                if (i != c && m.get(i, c)) { m.addRow(i, c); inv.addRow(i, c); }
        }
        return inv;
    }

    bool isIdentity() const {
        if (rows_ != cols_) return false;
        return *this == identity(rows_);
    }

    bool isPermutation() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i) {
            int ones = 0;
            for (int j = 0; j < cols_; ++j) ones += get(i, j);
            if (ones != 1) return false;
        }
        for (int j = 0; j < cols_; ++j) {
            int ones = 0;
            for (int i = 0; i < rows_; ++i) ones += get(i, j);
            if (ones != 1) return false;
        }
        return true;
    }

    size_t hash() const {
        size_t h = std::hash<int>()(rows_) * 31 + std::hash<int>()(cols_);
        for (uint64_t w : bits_) h = h * 1000003u + std::hash<uint64_t>()(w);
        return h;
    }

private:
    void addRow(int r, int k, const F2Matrix& o) {
        for (int w = 0; w < words_ && w < o.words_; ++w) bits_[idx(r) + w] ^= o.bits_[o.idx(k) + w];
    }

    size_t idx(int r) const { return static_cast<size_t>(r) * words_; }

    int rows_ = 0, cols_ = 0, words_ = 1;
    std::vector<uint64_t> bits_;
};

/// Elementary transvection I + e[to][from]: adds coordinate `from` to coordinate `to`.
/// Drawn as a crossover arrow from strand `from` to strand `to`.
struct Transvection {
    int from = 0;
    int to = 0;
    bool operator==(const Transvection&) const = default;
};

inline F2Matrix transvectionMatrix(int n, const Transvection& t) {
    F2Matrix m = F2Matrix::identity(n);
    m.set(t.to, t.from, true);
    return m;
}

/// Bruhat (LPU) data: P = L * sigma * U with L lower-unipotent, U upper-unipotent,
/// sigma a permutation given as sigma[col] = row of the pivot.
/// lower/upper are factor lists; multiplying the transvections in order
/// (upper applied first, i.e. rightmost in the matrix product) recovers P.
struct LPU {
    std::vector<Transvection> lower;   // factors of L, in matrix-product order (leftmost first)
    std::vector<int> sigma;            // sigma[c] = r
    std::vector<Transvection> upper;   // factors of U, in matrix-product order
};

/// Decompose an invertible P as L * sigma * U. Throws when P is singular.
inline LPU lpuDecompose(const F2Matrix& p) {
    assert(p.rows() == p.cols());
    const int n = p.rows();
    F2Matrix m = p;
    LPU out;
    out.sigma.assign(n, -1);
    std::vector<bool> usedRow(n, false);
    std::vector<Transvection> lops;  // row ops applied on the left, in application order
    std::vector<Transvection> uops;  // col ops applied on the right, in application order
    for (int c = 0; c < n; ++c) {
        int r = -1;
        for (int i = 0; i < n; ++i)
            if (!usedRow[i] && m.get(i, c)) { r = i; break; }
        if (r < 0) throw std::invalid_argument("lpuDecompose: singular matrix");
        usedRow[r] = true;
        out.sigma[c] = r;
        // clear below the pivot (rows i > r), a lower-unipotent row op
        for (int i = r + 1; i < n; ++i)
            if (m.get(i, c)) {
                m.addRow(i, r);
                lops.push_back({r, i});  // E = I + e[i][r]
            }
        // clear to the right of the pivot (cols j > c), an upper-unipotent col op
        for (int j = c + 1; j < n; ++j)
            if (m.get(r, j)) {
                for (int i = 0; i < n; ++i)
                    if (m.get(i, c)) m.flip(i, j);
                uops.push_back({j, c});  // col_j += col_c: matrix I + e[c][j]
            }
    }
    // (E_k...E_1) P (F_1...F_l) = sigma  =>  P = E_1...E_k sigma F_l...F_1
    // since each elementary is its own inverse over F2.
    out.lower = lops;
    for (auto it = uops.rbegin(); it != uops.rend(); ++it) out.upper.push_back(*it);
    return out;
}

inline F2Matrix permutationMatrix(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    F2Matrix m(n, n);
    for (int c = 0; c < n; ++c) m.set(sigma[c], c, true);
    return m;
}

inline F2Matrix lpuRecompose(const LPU& d) {
    const int n = static_cast<int>(d.sigma.size());
    F2Matrix m = permutationMatrix(d.sigma);
    for (const auto& t : d.upper) m = m * transvectionMatrix(n, t);
    F2Matrix l = F2Matrix::identity(n);
    for (const auto& t : d.lower) l = l * transvectionMatrix(n, t);
    return l * m;
}

/// Solve A x = b over F2. Returns one solution, or nullopt when inconsistent.
/// When `kernelBasis` is non-null it receives a basis of ker A.
inline std::optional<std::vector<bool>> solveF2(const F2Matrix& a, const std::vector<bool>& b,
                                                std::vector<std::vector<bool>>* kernelBasis = nullptr) {
    const int rows = a.rows(), cols = a.cols();
    assert(static_cast<int>(b.size()) == rows);
    F2Matrix m(rows, cols + 1);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m.set(i, j, a.get(i, j));
        m.set(i, cols, b[i]);
    }
    std::vector<int> pivotOfCol(cols, -1);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m.get(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        m.swapRows(r, piv);
        for (int i = 0; i < rows; ++i)
            if (i != r && m.get(i, c)) m.addRow(i, r);
        pivotOfCol[c] = r;
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (m.get(i, cols)) return std::nullopt;
    std::vector<bool> x(cols, false);
    for (int c = 0; c < cols; ++c)
        if (pivotOfCol[c] >= 0) x[c] = m.get(pivotOfCol[c], cols);
    if (kernelBasis) {
        kernelBasis->clear();
        for (int c = 0; c < cols; ++c) {
            if (pivotOfCol[c] >= 0) continue;
            std::vector<bool> v(cols, false);
            v[c] = true;
            for (int c2 = 0; c2 < cols; ++c2)
                if (pivotOfCol[c2] >= 0 && m.get(pivotOfCol[c2], c)) v[c2] = true;
            kernelBasis->push_back(std::move(v));
        }
    }
    return x;
}

}  // namespace iotacx
