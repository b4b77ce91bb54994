#pragma once

// Exact linear algebra over a prime field F_p. Everything here is dense and
// integer-valued; no floating point enters rank or solve computations.

#include <cstdint>
#include <optional>
#include <vector>

#include "hil/common.hpp"

namespace hil {

struct bad_prime : error {
    explicit bad_prime(const std::string& msg) : error(msg) {}
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Arithmetic in F_p for p < 2^31; residues live in [0, p).
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p >= (1u << 31) || !is_prime(p)) throw bad_prime("modulus must be a prime < 2^31");
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t reduce(std::int64_t x) const {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t inv(std::uint32_t a) const {
        // extended Euclid
        std::int64_t t = 0, nt = 1, r = p_, nr = a % p_;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        if (r != 1) throw bad_prime("element not invertible");
        return static_cast<std::uint32_t>(t < 0 ? t + p_ : t);
    }

    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t p_;
};

// Dense row-major matrix over F_p. Zero-dimensional shapes are legal and
// behave as the corresponding zero objects.
class FpMat {
public:
    FpMat() : rows_(0), cols_(0), f_(2) {}
    FpMat(int rows, int cols, PrimeField f)
        : rows_(rows), cols_(cols), f_(f), a_(static_cast<std::size_t>(rows) * cols, 0) {}

    static FpMat identity(int n, PrimeField f) {
        FpMat m(n, n, f);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const PrimeField& field() const { return f_; }

    std::uint32_t& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    std::uint32_t at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    FpMat mul(const FpMat& rhs) const {
        FpMat out(rows_, rhs.cols_, f_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                std::uint32_t v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < rhs.cols_; ++j)
                    out.at(i, j) = f_.add(out.at(i, j), f_.mul(v, rhs.at(k, j)));
            }
        return out;
    }

    int rank() const {
        FpMat m = *this;
        return m.row_reduce_in_place();
    }

    bool is_zero() const {
        for (auto v : a_) if (v != 0) return false;
        return true;
    }

    bool operator==(const FpMat& rhs) const {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_ && f_ == rhs.f_ && a_ == rhs.a_;
    }

    // In-place Gauss elimination to row echelon form; returns rank.
    int row_reduce_in_place() {
        int rank = 0;
        for (int c = 0; c < cols_ && rank < rows_; ++c) {
            int pivot = -1;
            for (int r = rank; r < rows_; ++r)
                if (at(r, c) != 0) { pivot = r; break; }
            if (pivot < 0) continue;
            swap_rows(pivot, rank);
            std::uint32_t inv = f_.inv(at(rank, c));
            for (int j = c; j < cols_; ++j) at(rank, j) = f_.mul(at(rank, j), inv);
            for (int r = 0; r < rows_; ++r) {
                if (r == rank || at(r, c) == 0) continue;
                std::uint32_t factor = at(r, c);
                for (int j = c; j < cols_; ++j)
                    at(r, j) = f_.sub(at(r, j), f_.mul(factor, at(rank, j)));
            }
            ++rank;
        }
        return rank;
    }

private:
    void swap_rows(int r1, int r2) {
        if (r1 == r2) return;
        for (int j = 0; j < cols_; ++j) std::swap(at(r1, j), at(r2, j));
    }

    int rows_, cols_;
    PrimeField f_;
    std::vector<std::uint32_t> a_;
};

using FpVec = std::vector<std::uint32_t>;

// Incremental row-echelon span of vectors of a fixed length; supports rank
// queries and membership-with-coefficients against the inserted generators.
class FpSpan {
public:
    FpSpan(int dim, PrimeField f) : dim_(dim), f_(f) {}

    int rank() const { return static_cast<int>(rows_.size()); }

    // Inserts v into the span; returns true if the rank grew.
    bool add(FpVec v) {
        reduce_against(v);
        int piv = pivot_of(v);
        if (piv < 0) return false;
        normalize(v, piv);
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }

    bool contains(FpVec v) const {
        reduce_against(v);
        return pivot_of(v) < 0;
    }

private:
    void reduce_against(FpVec& v) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            std::uint32_t c = v[pivots_[k]];
            if (c == 0) continue;
            for (int j = 0; j < dim_; ++j) v[j] = f_.sub(v[j], f_.mul(c, rows_[k][j]));
        }
    }
    int pivot_of(const FpVec& v) const {
        for (int j = 0; j < dim_; ++j)
            if (v[j] != 0) return j;
        return -1;
    }
    void normalize(FpVec& v, int piv) const {
        std::uint32_t inv = f_.inv(v[piv]);
        for (int j = 0; j < dim_; ++j) v[j] = f_.mul(v[j], inv);
    }

    int dim_;
    PrimeField f_;
    std::vector<FpVec> rows_;
    std::vector<int> pivots_;
};

// Solves A x = rhs, where the columns of A are `gens`; returns the
// coefficient vector or nullopt if rhs lies outside the column span.
inline std::optional<FpVec> fp_solve(const std::vector<FpVec>& gens, const FpVec& rhs,
                                     PrimeField f) {
    const int dim = static_cast<int>(rhs.size());
    const int n = static_cast<int>(gens.size());
    // augmented [A | rhs], eliminate, read off one solution
    FpMat m(dim, n + 1, f);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < dim; ++i) m.at(i, j) = gens[j][i];
    for (int i = 0; i < dim; ++i) m.at(i, n) = rhs[i];

    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < n && rank < dim; ++c) {
        int pivot = -1;
        for (int r = rank; r < dim; ++r)
            if (m.at(r, c) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        for (int j = 0; j <= n; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        std::uint32_t inv = f.inv(m.at(rank, c));
        for (int j = c; j <= n; ++j) m.at(rank, j) = f.mul(m.at(rank, j), inv);
        for (int r = 0; r < dim; ++r) {
            if (r == rank || m.at(r, c) == 0) continue;
            std::uint32_t factor = m.at(r, c);
            for (int j = c; j <= n; ++j) m.at(r, j) = f.sub(m.at(r, j), f.mul(factor, m.at(rank, j)));
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (int r = rank; r < dim; ++r)
        if (m.at(r, n) != 0) return std::nullopt;
    FpVec x(n, 0);
    for (int k = 0; k < rank; ++k) x[pivot_col[k]] = m.at(k, n);
    return x;
}

// Basis of the null space of A (columns of A indexed by the solution vector).
inline std::vector<FpVec> fp_kernel(const FpMat& a) {
    const int rows = a.rows(), cols = a.cols();
    const PrimeField& f = a.field();
    FpMat m = a;
    std::vector<int> pivot_of_col(cols, -1);
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m.at(r, c) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        for (int j = 0; j < cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        std::uint32_t inv = f.inv(m.at(rank, c));
        for (int j = c; j < cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m.at(r, c) == 0) continue;
            std::uint32_t factor = m.at(r, c);
            for (int j = c; j < cols; ++j) m.at(r, j) = f.sub(m.at(r, j), f.mul(factor, m.at(rank, j)));
        }
        pivot_of_col[c] = rank;
        ++rank;
    }
    std::vector<FpVec> basis;
    for (int c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        FpVec v(cols, 0);
        v[c] = 1;
        for (int c2 = 0; c2 < cols; ++c2)
            if (pivot_of_col[c2] >= 0) v[c2] = f.neg(m.at(pivot_of_col[c2], c));
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace hil
