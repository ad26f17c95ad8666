#include "cimred/quiver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cimred {

ExchangeMatrix::ExchangeMatrix(IntMat entries) : b_(std::move(entries)) {
    if (b_.rows() != b_.cols())
        fail(Errc::not_skew_symmetric, "exchange matrix must be square");
    if (!is_skew_symmetric(b_))
        fail(Errc::not_skew_symmetric, "matrix is not skew-symmetric");
}

ExchangeMatrix exchange_matrix_from_rows(const std::vector<std::vector<long long>>& rows) {
    const int n = int(rows.size());
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) {
        if (int(rows[i].size()) != n)
            fail(Errc::not_skew_symmetric, "exchange matrix must be square");
        for (int j = 0; j < n; ++j) m(i, j) = BigInt((long)rows[i][j]);
    }
    return ExchangeMatrix(std::move(m));
}

ExchangeMatrix fomin6(const QuiverFamilyParams& q) {
    if (q.r < 1 || q.s < 1 || q.t < 1 || q.p < 1)
        fail(Errc::parse_error, "family parameters r,s,t,p must be positive integers");
    const BigInt r = (long)q.r, s = (long)q.s, t = (long)q.t, p = (long)q.p;
    const BigInt rows[6][6] = {
        {0, -r, s, -p, s, -t},
        {r, 0, -t - r * s, s, -p - r * s, s},
        {-s, t + r * s, 0, -r - s * (t - p), s, -p},
        {p, -s, r + s * (t - p), 0, -t - r * s, s},
        {-s, p + r * s, -s, t + r * s, 0, -r},
        {t, -s, p, -s, r, 0},
    };
    IntMat full(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) full(i, j) = rows[i][j];
    return ExchangeMatrix(std::move(full));
}

ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, int node) {
    const int n = b.size();
    if (node < 1 || node > n) fail(Errc::index_out_of_range, "mutation node out of range");
    const int k = node - 1;
    const IntMat& m = b.entries();
    IntMat out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == k || j == k) {
                out(i, j) = -m(i, j);
            } else {
                BigInt t = abs(m(i, k)) * m(k, j) + m(i, k) * abs(m(k, j));
                out(i, j) = m(i, j) + t / 2;
            }
        }
    }
    return ExchangeMatrix(std::move(out));
}

ExchangeMatrix sigma_conjugate(const ExchangeMatrix& b, int m) {
    const int n = b.size();
    auto shift = [&](int i) { return ((i - m) % n + n) % n; };
    IntMat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = b.entry(shift(i), shift(j));
    return ExchangeMatrix(std::move(out));
}

bool is_period(const ExchangeMatrix& b, int m) {
    if (m < 1) return false;
    const int n = b.size();
    ExchangeMatrix cur = b;
    for (int step = 0; step < m; ++step) cur = mutate_matrix(cur, step % n + 1);
    return cur == sigma_conjugate(b, m);
}

PeriodResult detect_period(const ExchangeMatrix& b, int max_m) {
    const int n = b.size();
    ExchangeMatrix cur = b;
    for (int m = 1; m <= max_m; ++m) {
        cur = mutate_matrix(cur, (m - 1) % n + 1);
        ExchangeMatrix conj = sigma_conjugate(b, m);
        if (cur == conj) return PeriodResult{m, max_m, cur, conj};
    }
    return PeriodResult{std::nullopt, max_m, cur, sigma_conjugate(b, max_m)};
}

ClusterPoint::ClusterPoint(std::vector<double> v) : values(std::move(v)) {
    for (double x : values)
        if (!(x > 0.0) || !std::isfinite(x))
            fail(Errc::non_positive_point, "cluster point must be strictly positive");
}

std::vector<long double> to_logs(const ClusterPoint& u) {
    std::vector<long double> logs(u.values.size());
    for (size_t i = 0; i < logs.size(); ++i) logs[i] = std::log((long double)u.values[i]);
    return logs;
}

ClusterPoint from_logs(const std::vector<long double>& logs) {
    std::vector<double> vals(logs.size());
    for (size_t i = 0; i < logs.size(); ++i) vals[i] = double(std::exp(logs[i]));
    return ClusterPoint(std::move(vals));
}

std::vector<QuadReal> to_quad_logs(const ClusterPoint& u) {
    std::vector<QuadReal> logs(u.values.size());
    for (size_t i = 0; i < logs.size(); ++i) logs[i] = logq((QuadReal)u.values[i]);
    return logs;
}

std::pair<ExchangeMatrix, ClusterPoint> mutate_point(const ExchangeMatrix& b, int node,
                                                     const ClusterPoint& u) {
    const int n = b.size();
    if (node < 1 || node > n) fail(Errc::index_out_of_range, "mutation node out of range");
    if (u.size() != n) fail(Errc::shape_mismatch, "point dimension does not match quiver");
    auto logs = to_logs(u);
    mutate_point_log(b.entries(), node - 1, logs);
    return {mutate_matrix(b, node), from_logs(logs)};
}

ClusterPoint iteration_map(const ExchangeMatrix& b, int m, const ClusterPoint& u) {
    if (u.size() != b.size()) fail(Errc::shape_mismatch, "point dimension does not match quiver");
    return from_logs(iteration_map_log(b, m, to_logs(u)));
}

// ---- recurrence rendering ---------------------------------------------

namespace {

struct Factor {
    int offset;  // u[n + offset]
    BigInt expo; // > 0
};

std::string render_var(int offset, int strands, int base_strand) {
    // strands == 1: plain u[n+o]. strands == 2: x/y with absolute index
    // l = base + offset mapped to x[(l+1)/2] / y[l/2].
    std::ostringstream os;
    if (strands == 1) {
        os << "u[n";
        if (offset > 0) os << "+" << offset;
        os << "]";
        return os.str();
    }
    int l = base_strand + offset; // absolute 1-based index in the sequence
    bool odd = l % 2 == 1;
    int pos = odd ? (l + 1) / 2 : l / 2;
    int rel = pos - (base_strand + 1) / 2; // base maps to strand position n
    os << (odd ? "x[n" : "y[n");
    if (rel > 0) os << "+" << rel;
    os << "]";
    return os.str();
}

std::string render_monomial(const std::vector<Factor>& factors, int strands, int base) {
    if (factors.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& f : factors) {
        if (!first) os << "·";
        first = false;
        os << render_var(f.offset, strands, base);
        if (f.expo != 1) os << "^" << f.expo.get_str();
    }
    return os.str();
}

} // namespace

std::string render_recurrence(const ExchangeMatrix& b, int m) {
    if (!is_period(b, m)) fail(Errc::not_periodic, "m is not a verified period of the quiver");
    const int n = b.size();
    if (m > n) fail(Errc::index_out_of_range, "recurrence rendering needs m <= node count");
    const int strands = (m == 2 && n % 2 == 0) ? 2 : 1;

    std::ostringstream out;
    ExchangeMatrix cur = b;
    for (int i = 1; i <= m; ++i) { // relation class i, read off row i of the current matrix
        std::vector<Factor> neg, pos;
        for (int j = 1; j <= n; ++j) {
            const BigInt& e = cur.entry(i - 1, j - 1);
            if (e == 0) continue;
            int l = j < i ? n + j : j; // nodes < i already hold the new variables
            Factor f{l - i, abs(e)};
            (e < 0 ? neg : pos).push_back(f);
        }
        auto by_offset = [](const Factor& a, const Factor& b2) { return a.offset < b2.offset; };
        std::sort(neg.begin(), neg.end(), by_offset);
        std::sort(pos.begin(), pos.end(), by_offset);

        if (i > 1) out << "\n";
        out << render_var(n, strands, i) << "·" << render_var(0, strands, i) << " = ";
        if (neg.empty() && pos.empty()) {
            out << "2";
        } else {
            out << render_monomial(neg, strands, i) << " + " << render_monomial(pos, strands, i);
        }
        if (strands == 1 && m > 1) out << "   (n = " << i << ", " << i + m << ", " << i + 2 * m << ", ...)";
        cur = mutate_matrix(cur, i);
    }
    return out.str();
}

} // namespace cimred
