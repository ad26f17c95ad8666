#include "cimred/exactmat.hpp"

#include <cctype>

namespace cimred {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::parse_error: return "ParseError";
        case Errc::not_skew_symmetric: return "NotSkewSymmetric";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::non_positive_point: return "NonPositivePoint";
        case Errc::not_periodic: return "NotPeriodic";
        case Errc::zero_scale: return "ZeroScale";
        case Errc::shape_mismatch: return "ShapeMismatch";
        case Errc::rank_deficient: return "RankDeficient";
        case Errc::not_symplectic_change: return "NotSymplecticChange";
        case Errc::full_rank: return "FullRank";
        case Errc::unknown_family: return "UnknownFamily";
        case Errc::residual_rank: return "ResidualRankError";
        case Errc::internal: return "InternalError";
    }
    return "UnknownError";
}

Rational rational_from_string(const std::string& text) {
    if (text.empty()) fail(Errc::parse_error, "empty rational literal");
    for (char c : text)
        if (!std::isdigit((unsigned char)c) && c != '-' && c != '+' && c != '/')
            fail(Errc::parse_error, "bad rational literal: " + text);
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        fail(Errc::parse_error, "bad rational literal: " + text);
    if (q.get_den() == 0) fail(Errc::parse_error, "zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

RatMat to_rational(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

RatMat scale(const RatMat& m, const Rational& factor) {
    RatMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j) * factor;
    return r;
}

template <class T>
static bool skew_impl(const Mat<T>& m) {
    if (m.rows() != m.cols()) return false;
    for (int i = 0; i < m.rows(); ++i) {
        if (m(i, i) != 0) return false;
        for (int j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != -m(j, i)) return false;
    }
    return true;
}

bool is_skew_symmetric(const IntMat& m) { return skew_impl(m); }
bool is_skew_symmetric(const RatMat& m) { return skew_impl(m); }

double to_double(const Rational& q) { return q.get_d(); }

EliminationResult eliminate(const RatMat& a) {
    const int rows = a.rows(), cols = a.cols();

    // Row-wise denominator clearing preserves the right kernel.
    IntMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        BigInt l = 1;
        for (int j = 0; j < cols; ++j) {
            BigInt den = a(i, j).get_den();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        }
        for (int j = 0; j < cols; ++j) {
            Rational v = a(i, j) * Rational(l);
            m(i, j) = v.get_num(); // denominator is 1 by construction
        }
    }

    // Bareiss fraction-free elimination to upper echelon.
    EliminationResult res;
    BigInt prev = 1;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int i = row; i < rows; ++i)
            if (m(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < cols; ++j) std::swap(m(piv, j), m(row, j));
        for (int i = row + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j) {
                BigInt t = m(row, col) * m(i, j) - m(i, col) * m(row, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, col) = 0;
        }
        prev = m(row, col);
        res.pivot_cols.push_back(col);
        ++row;
    }
    res.rank = row;

    // Kernel basis by rational back-substitution, one vector per free column.
    std::vector<bool> is_pivot(cols, false);
    for (int c : res.pivot_cols) is_pivot[c] = true;
    const int nullity = cols - res.rank;
    res.kernel = RatMat(cols, nullity);
    int kcol = 0;
    for (int free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> x(cols);
        x[free_col] = 1;
        for (int r = res.rank - 1; r >= 0; --r) {
            int pc = res.pivot_cols[r];
            Rational s = 0;
            for (int j = pc + 1; j < cols; ++j)
                if (x[j] != 0) s += Rational(m(r, j)) * x[j];
            x[pc] = -s / Rational(m(r, pc));
        }
        for (int i = 0; i < cols; ++i) res.kernel(i, kcol) = x[i];
        ++kcol;
    }
    return res;
}

std::optional<RatMat> inverse(const RatMat& a) {
    if (a.rows() != a.cols()) fail(Errc::shape_mismatch, "inverse of non-square matrix");
    const int n = a.rows();
    RatMat m = a;
    RatMat inv = RatMat::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (m(i, col) != 0) { piv = i; break; }
        if (piv < 0) return std::nullopt;
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        Rational p = m(col, col);
        for (int j = 0; j < n; ++j) {
            m(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || m(i, col) == 0) continue;
            Rational f = m(i, col);
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

} // namespace cimred
