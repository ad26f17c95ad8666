#pragma once

// Shared builders for the test suites.

#include <vector>

#include "cimred/exactmat.hpp"
#include "cimred/quiver.hpp"
#include "cimred/rng.hpp"

namespace testutil {

using namespace cimred;

inline Rational rat(const char* s) { return rational_from_string(s); }

inline IntMat intmat(const std::vector<std::vector<long long>>& rows) {
    IntMat m(int(rows.size()), int(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = BigInt((long)rows[i][j]);
    return m;
}

inline RatMat ratmat(const std::vector<std::vector<const char*>>& rows) {
    RatMat m(int(rows.size()), int(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rat(rows[i][j]);
    return m;
}

inline ExchangeMatrix quiver(const std::vector<std::vector<long long>>& rows) {
    return exchange_matrix_from_rows(rows);
}

inline ExchangeMatrix q_2_13_5_7() { return fomin6({2, 13, 5, 7}); } // 2-periodic, rank 2
inline ExchangeMatrix q_1_1_2_3() { return fomin6({1, 1, 2, 3}); }
inline ExchangeMatrix q_2_6_2_4() { return fomin6({2, 6, 2, 4}); }

// Random skew integer matrix, |entries| <= mag.
inline ExchangeMatrix random_skew(SplitMix64& rng, int n, int mag) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long v = long(rng.uniform_int(-mag, mag));
            m(i, j) = v;
            m(j, i) = -v;
        }
    return ExchangeMatrix(std::move(m));
}

inline ClusterPoint random_point(SplitMix64& rng, int n) {
    auto logs = sample_log_point(rng, n);
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = std::exp(logs[i]);
    return ClusterPoint(std::move(vals));
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace testutil
