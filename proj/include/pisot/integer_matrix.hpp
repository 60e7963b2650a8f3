#pragma once

#include "pisot/error.hpp"
#include "pisot/numbers.hpp"

#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace pisot {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Integer(0)) {}

    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_) fail(errc::out_of_range, "ragged matrix literal");
            for (long x : r) a_.emplace_back(x);
        }
    }

    static IntegerMatrix identity(std::size_t n)
    {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

    friend IntegerMatrix operator+(const IntegerMatrix& x, const IntegerMatrix& y)
    {
        check_same_shape(x, y);
        IntegerMatrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
        return r;
    }

    friend IntegerMatrix operator-(const IntegerMatrix& x, const IntegerMatrix& y)
    {
        check_same_shape(x, y);
        IntegerMatrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
        return r;
    }

    friend IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y)
    {
        if (x.cols_ != y.rows_) fail(errc::out_of_range, "matrix shapes do not compose");
        IntegerMatrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x(i, k) == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }

    friend IntegerMatrix operator*(const Integer& s, const IntegerMatrix& x)
    {
        IntegerMatrix r = x;
        for (auto& v : r.a_) v *= s;
        return r;
    }

    std::vector<Integer> apply(const std::vector<Integer>& v) const
    {
        if (v.size() != cols_) fail(errc::out_of_range, "vector length does not match matrix");
        std::vector<Integer> out(rows_, Integer(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    IntegerMatrix transpose() const
    {
        IntegerMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    IntegerMatrix power(unsigned long e) const
    {
        if (!square()) fail(errc::out_of_range, "power of a non-square matrix");
        IntegerMatrix r = identity(rows_), b = *this;
        while (e) {
            if (e & 1ul) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    /// Fraction-free Bareiss elimination.
    Integer determinant() const
    {
        if (!square()) fail(errc::out_of_range, "determinant of a non-square matrix");
        const std::size_t n = rows_;
        if (n == 0) return 1;
        IntegerMatrix m = *this;
        Integer prev = 1;
        int sign = 1;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (m(k, k) == 0) {
                std::size_t p = k + 1;
                while (p < n && m(p, k) == 0) ++p;
                if (p == n) return 0;
                m.swap_rows(k, p);
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i)
                for (std::size_t j = k + 1; j < n; ++j) {
                    Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                    mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
            prev = m(k, k);
        }
        return sign * m(n - 1, n - 1);
    }

    /// Exact inverse over Q by Gauss-Jordan elimination.
    RationalMatrix inverse_rational() const
    {
        if (!square()) fail(errc::out_of_range, "inverse of a non-square matrix");
        const std::size_t n = rows_;
        RationalMatrix aug(n, std::vector<Rational>(2 * n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug[i][j] = (*this)(i, j);
            aug[i][n + i] = 1;
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && aug[p][c] == 0) ++p;
            if (p == n) fail(errc::singular_input, "matrix is singular");
            std::swap(aug[p], aug[c]);
            Rational inv = 1 / aug[c][c];
            for (auto& x : aug[c]) x *= inv;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == c || aug[i][c] == 0) continue;
                Rational f = aug[i][c];
                for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[c][j];
            }
        }
        RationalMatrix out(n);
        for (std::size_t i = 0; i < n; ++i) out[i].assign(aug[i].begin() + static_cast<long>(n), aug[i].end());
        return out;
    }

    void swap_rows(std::size_t i, std::size_t k)
    {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }

    void swap_cols(std::size_t j, std::size_t k)
    {
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
    }

    /// row_i += f * row_k
    void add_row(std::size_t i, std::size_t k, const Integer& f)
    {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += f * (*this)(k, j);
    }

    /// col_j += f * col_k
    void add_col(std::size_t j, std::size_t k, const Integer& f)
    {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += f * (*this)(i, k);
    }

    void negate_row(std::size_t i)
    {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }

    std::vector<std::vector<Integer>> nested() const
    {
        std::vector<std::vector<Integer>> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j));
        return out;
    }

    /// "[[3,1,3],[1,3,7],[3,7,11]]"
    std::string to_string() const
    {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
            os << ']';
        }
        os << ']';
        return os.str();
    }

private:
    static void check_same_shape(const IntegerMatrix& x, const IntegerMatrix& y)
    {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) fail(errc::out_of_range, "matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> a_;
};

/// U * A * V = S with U, V unimodular and S diagonal, s_1 | s_2 | ...
struct SmithDecomposition {
    IntegerMatrix U;
    IntegerMatrix S;
    IntegerMatrix V;
    std::vector<Integer> invariant_factors;
    bool singular = false;
};

namespace detail {

inline bool smallest_entry(const IntegerMatrix& m, std::size_t t, std::size_t& pi, std::size_t& pj)
{
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < m.rows(); ++i)
        for (std::size_t j = t; j < m.cols(); ++j) {
            if (m(i, j) == 0) continue;
            Integer a = abs(m(i, j));
            if (!found || a < best) {
                best = a;
                pi = i;
                pj = j;
                found = true;
            }
        }
    return found;
}

} // namespace detail

/// Smith normal form by elementary operations; the pivot is the smallest
/// nonzero |entry| of the remaining block, ties to the lowest row then column.
inline SmithDecomposition smith_normal_form(const IntegerMatrix& A)
{
    SmithDecomposition r{IntegerMatrix::identity(A.rows()), A, IntegerMatrix::identity(A.cols()), {}, false};
    IntegerMatrix& S = r.S;
    const std::size_t n = std::min(A.rows(), A.cols());
    std::size_t t = 0;
    for (; t < n; ++t) {
        std::size_t pi = 0, pj = 0;
        if (!detail::smallest_entry(S, t, pi, pj)) break;
        for (;;) {
            if (pi != t) {
                S.swap_rows(t, pi);
                r.U.swap_rows(t, pi);
            }
            if (pj != t) {
                S.swap_cols(t, pj);
                r.V.swap_cols(t, pj);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < S.rows(); ++i) {
                if (S(i, t) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
                S.add_row(i, t, -q);
                r.U.add_row(i, t, -q);
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < S.cols(); ++j) {
                if (S(t, j) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
                S.add_col(j, t, -q);
                r.V.add_col(j, t, -q);
                if (S(t, j) != 0) clean = false;
            }
            if (clean) {
                // Enforce divisibility of the remaining block by the pivot.
                std::size_t bad = 0;
                for (std::size_t i = t + 1; i < S.rows() && !bad; ++i)
                    for (std::size_t j = t + 1; j < S.cols(); ++j)
                        if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
                            bad = i;
                            break;
                        }
                if (!bad) break;
                S.add_row(t, bad, 1);
                r.U.add_row(t, bad, 1);
            }
            detail::smallest_entry(S, t, pi, pj);
        }
        if (S(t, t) < 0) {
            S.negate_row(t);
            r.U.negate_row(t);
        }
    }
    for (std::size_t i = 0; i < n; ++i) r.invariant_factors.push_back(S(i, i));
    r.singular = t < n || A.rows() != A.cols();
    return r;
}

} // namespace pisot
