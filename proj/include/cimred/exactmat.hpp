#pragma once

// Dense exact matrices over GMP integers/rationals, plus the exact
// elimination routines the rest of the library is built on.

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "cimred/errors.hpp"

namespace cimred {

using BigInt = mpz_class;
using Rational = mpq_class;

// Parses "p", "-p" or "p/q"; canonicalizes. Rejects q = 0 and garbage.
Rational rational_from_string(const std::string& text);

// Canonical "p" / "p/q" rendering (q > 0, gcd(p,q) = 1).
std::string rational_to_string(const Rational& q);

template <class T>
class Mat {
public:
    Mat() = default;

    Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}

    Mat(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = int(rows.size());
        cols_ = rows_ ? int(rows.begin()->size()) : 0;
        data_.reserve(size_t(rows_) * cols_);
        for (const auto& row : rows) {
            if (int(row.size()) != cols_)
                fail(Errc::shape_mismatch, "ragged matrix initializer");
            for (const auto& x : row) data_.push_back(x);
        }
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[size_t(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

    bool operator==(const Mat&) const = default;

    Mat transposed() const {
        Mat m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) fail(Errc::shape_mismatch, "matrix product shape");
        Mat m(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (int j = 0; j < o.cols_; ++j) m(i, j) += a * o(k, j);
            }
        return m;
    }

    Mat operator+(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::shape_mismatch, "matrix sum shape");
        Mat m(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
        return m;
    }

    Mat operator-(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::shape_mismatch, "matrix difference shape");
        Mat m(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - o.data_[i];
        return m;
    }

    Mat operator-() const {
        Mat m(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
        return m;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

using IntMat = Mat<BigInt>;
using RatMat = Mat<Rational>;

RatMat to_rational(const IntMat& m);
RatMat scale(const RatMat& m, const Rational& factor);
bool is_skew_symmetric(const IntMat& m);
bool is_skew_symmetric(const RatMat& m);

double to_double(const Rational& q);

struct EliminationResult {
    int rank = 0;
    RatMat kernel;              // cols = kernel basis vectors, exact
    std::vector<int> pivot_cols;
};

// Exact rank + right-kernel basis. Elimination is fraction-free (Bareiss)
// on a denominator-cleared integer copy; kernel back-substitution is rational.
EliminationResult eliminate(const RatMat& a);

// Exact inverse of a square rational matrix; nullopt when singular.
std::optional<RatMat> inverse(const RatMat& a);

} // namespace cimred
