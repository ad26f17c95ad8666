#pragma once

// Quivers as skew-symmetric integer matrices, matrix/cluster mutation,
// cyclic-shift conjugation, period detection, the iteration map and
// recurrence rendering.
//
// Node indices are 1-based in every public signature (matching the usual
// quiver labelling); storage is 0-based.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cimred/dual.hpp"
#include "cimred/exactmat.hpp"
#include "cimred/quadreal.hpp"

namespace cimred {

class ExchangeMatrix {
public:
    // Validates skew-symmetry and zero diagonal.
    explicit ExchangeMatrix(IntMat entries);

    int size() const { return b_.rows(); }
    const IntMat& entries() const { return b_; }
    const BigInt& entry(int i, int j) const { return b_(i, j); } // 0-based

    bool operator==(const ExchangeMatrix&) const = default;

private:
    IntMat b_;
};

ExchangeMatrix exchange_matrix_from_rows(const std::vector<std::vector<long long>>& rows);

struct QuiverFamilyParams {
    long long r = 1, s = 1, t = 1, p = 1;
};

// The six-node family; all four parameters must be >= 1.
ExchangeMatrix fomin6(const QuiverFamilyParams& params);

// b'_ij = -b_ij on row/column k, else b_ij + (|b_ik| b_kj + b_ik |b_kj|)/2.
ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, int node);

// sigma^{-m} B sigma^m for the cyclic shift sigma : (1..N) -> (2..N,1);
// entry (i,j) of the result is b_{i-m, j-m} with indices mod N. m may be
// any integer (negative = inverse direction).
ExchangeMatrix sigma_conjugate(const ExchangeMatrix& b, int m);

// Exact test of mu_m o ... o mu_1 (B) == sigma^{-m} B sigma^m. For m > N
// the mutation sequence continues cyclically through the nodes.
bool is_period(const ExchangeMatrix& b, int m);

struct PeriodResult {
    std::optional<int> period; // nullopt = none up to bound
    int bound = 0;
    ExchangeMatrix mutated;    // mu_m o ... o mu_1 (B) at the period (or at the bound)
    ExchangeMatrix conjugated; // sigma^{-m} B sigma^m likewise
};

PeriodResult detect_period(const ExchangeMatrix& b, int max_m = 12);

struct ClusterPoint {
    std::vector<double> values;
    explicit ClusterPoint(std::vector<double> v); // rejects non-positive/non-finite
    int size() const { return int(values.size()); }
};

// ---- log-domain evaluation core --------------------------------------
//
// Every map on positive points is evaluated on log coordinates; the
// exchange-relation numerator A+ + A- goes through a log-sum-exp. T is a
// real scalar (double / long double) or Dual.

template <class T>
void mutate_point_log(const IntMat& b, int k, std::vector<T>& logu) { // k 0-based
    const int n = b.rows();
    T pos(logu[k] * 0.0), neg(logu[k] * 0.0); // zeros of matching gradient dim
    for (int j = 0; j < n; ++j) {
        double e = b(k, j).get_d();
        if (e > 0)
            pos = pos + logu[j] * e;
        else if (e < 0)
            neg = neg + logu[j] * (-e);
    }
    logu[k] = log_add_exp(pos, neg) - logu[k];
}

// phi = sigma^m o mu_m o ... o mu_1 on log coordinates. The matrix mutates
// alongside the point; the final shift rotates coordinates left by m.
template <class T>
std::vector<T> iteration_map_log(const ExchangeMatrix& b, int m, std::vector<T> logu) {
    const int n = b.size();
    ExchangeMatrix cur = b;
    for (int step = 0; step < m; ++step) {
        int k = step % n;
        mutate_point_log(cur.entries(), k, logu);
        cur = mutate_matrix(cur, k + 1);
    }
    std::vector<T> out(logu.size());
    for (int i = 0; i < n; ++i) out[i] = logu[(i + m) % n];
    return out;
}

// ---- double-precision wrappers ---------------------------------------

std::pair<ExchangeMatrix, ClusterPoint> mutate_point(const ExchangeMatrix& b, int node,
                                                     const ClusterPoint& u);

ClusterPoint iteration_map(const ExchangeMatrix& b, int m, const ClusterPoint& u);

std::vector<long double> to_logs(const ClusterPoint& u);
ClusterPoint from_logs(const std::vector<long double>& logs);
std::vector<QuadReal> to_quad_logs(const ClusterPoint& u);

// The m coupled exchange relations as shift-invariant recurrence text
// (one line per relation). Requires m to be a verified period.
std::string render_recurrence(const ExchangeMatrix& b, int m);

} // namespace cimred
