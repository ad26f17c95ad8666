#include "cimred/reduction.hpp"

#include <cmath>

namespace cimred {

RatMat canonical_pairing(int half_rank) {
    RatMat j(2 * half_rank, 2 * half_rank);
    for (int i = 0; i < half_rank; ++i) {
        j(2 * i, 2 * i + 1) = 1;
        j(2 * i + 1, 2 * i) = -1;
    }
    return j;
}

DarbouxBasis cartan_reduce(const LogTwoForm& w) {
    const int n = w.dim();
    RatMat res = w.w; // residual form, support shrinks by two coordinates per step
    std::vector<std::vector<Rational>> rows;

    for (int step = 0; step <= n; ++step) {
        int pi = -1, pj = -1;
        for (int i = 0; i < n && pi < 0; ++i)
            for (int j = i + 1; j < n; ++j)
                if (res(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break; // residual vanished: done

        // g1 = row_i / w_ij, g2 = row_j; then subtract dg1 ^ dg2.
        std::vector<Rational> a(n), b(n);
        const Rational piv = res(pi, pj);
        for (int l = 0; l < n; ++l) {
            a[l] = res(pi, l) / piv;
            b[l] = res(pj, l);
        }
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) res(p, q) -= a[p] * b[q] - b[p] * a[q];
        rows.push_back(std::move(a));
        rows.push_back(std::move(b));
    }
    if (!res.is_zero()) fail(Errc::residual_rank, "cartan residual did not vanish");

    RatMat g(int(rows.size()), n);
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rows[i][j];
    return DarbouxBasis{std::move(g)};
}

bool verify_darboux(const DarbouxBasis& g, const LogTwoForm& w) {
    if (g.ambient_dim() != w.dim()) fail(Errc::shape_mismatch, "basis/form dimensions differ");
    RatMat lhs = g.g.transposed() * canonical_pairing(g.half_rank()) * g.g;
    return lhs == w.w;
}

std::vector<double> projection(const DarbouxBasis& g, const ClusterPoint& u) {
    if (g.ambient_dim() != u.size()) fail(Errc::shape_mismatch, "point dimension mismatch");
    auto logs = to_logs(u);
    auto logy = apply_rational_matrix_log(g.g, logs);
    std::vector<double> y(logy.size());
    for (size_t i = 0; i < y.size(); ++i) y[i] = double(std::exp(logy[i]));
    return y;
}

Section build_section(const DarbouxBasis& g) {
    const int rows = g.g.rows(), cols = g.ambient_dim();

    // Greedy leftmost independent columns via rational elimination.
    RatMat work = g.g;
    std::vector<int> selected;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (work(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < cols; ++j) std::swap(work(piv, j), work(rank, j));
        for (int i = 0; i < rows; ++i) {
            if (i == rank || work(i, col) == 0) continue;
            Rational f = work(i, col) / work(rank, col);
            for (int j = 0; j < cols; ++j) work(i, j) -= f * work(rank, j);
        }
        selected.push_back(col);
        ++rank;
    }
    if (rank < rows) fail(Errc::rank_deficient, "basis rows are not independent");

    RatMat minor(rows, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) minor(i, j) = g.g(i, selected[j]);
    auto inv = inverse(minor);
    if (!inv) fail(Errc::rank_deficient, "selected column minor is singular");

    RatMat s(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) s(selected[i], j) = (*inv)(i, j);
    return Section{std::move(s)};
}

SymplecticChange make_symplectic_change(RatMat t) {
    if (t.rows() != t.cols() || t.rows() % 2 != 0)
        fail(Errc::not_symplectic_change, "transform must be square of even size");
    RatMat j = canonical_pairing(t.rows() / 2);
    if (t.transposed() * j * t != j)
        fail(Errc::not_symplectic_change, "transform does not preserve the canonical pairing");
    return SymplecticChange{std::move(t)};
}

DarbouxBasis apply_post_transform(const DarbouxBasis& g, const SymplecticChange& t) {
    if (t.t.cols() != g.g.rows()) fail(Errc::shape_mismatch, "transform size vs basis rows");
    return DarbouxBasis{t.t * g.g};
}

ReducedMapEvaluator::ReducedMapEvaluator(ExchangeMatrix b, int period, DarbouxBasis g, Section s)
    : b_(std::move(b)), period_(period), g_(std::move(g)), s_(std::move(s)) {
    if (!is_period(b_, period_))
        fail(Errc::not_periodic, "reduced map needs a verified period");
    if (g_.ambient_dim() != b_.size() || s_.s.rows() != b_.size() || s_.s.cols() != g_.g.rows())
        fail(Errc::shape_mismatch, "basis/section dimensions");
}

std::vector<double> ReducedMapEvaluator::eval(const std::vector<double>& y) const {
    std::vector<long double> logy(y.size());
    for (size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0) || !std::isfinite(y[i]))
            fail(Errc::non_positive_point, "reduced point must be strictly positive");
        logy[i] = std::log((long double)y[i]);
    }
    auto out = eval_log(logy);
    std::vector<double> v(out.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = double(std::exp(out[i]));
    return v;
}

namespace {

// Relative discrepancy of two positive values given on the log scale.
double rel_err_from_logs(long double la, long double lb) {
    return std::abs((double)std::expm1(la - lb));
}

} // namespace

PointReport verify_commutation(const ExchangeMatrix& b, int m, const DarbouxBasis& g,
                               const Section& s, const std::vector<ClusterPoint>& points,
                               double tol) {
    ReducedMapEvaluator eval(b, m, g, s);
    PointReport rep;
    rep.tol = tol;
    rep.trials = int(points.size());
    for (const auto& u : points) {
        auto logu = to_logs(u);
        auto lhs = apply_rational_matrix_log(g.g, iteration_map_log(b, m, logu)); // pi o phi
        auto rhs = eval.eval_log(apply_rational_matrix_log(g.g, logu));           // phi_hat o pi
        for (size_t i = 0; i < lhs.size(); ++i)
            rep.max_residual = std::max(rep.max_residual, rel_err_from_logs(lhs[i], rhs[i]));
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

PointReport verify_fiber_invariance(const DarbouxBasis& g, const ExchangeMatrix& b, int m,
                                    const std::vector<ClusterPoint>& points, double tol,
                                    SplitMix64& rng) {
    RankKernel rk = rank_and_kernel(standard_form(b));
    if (rk.kernel.cols() == 0)
        fail(Errc::full_rank, "form has trivial kernel; nothing to test");

    PointReport rep;
    rep.tol = tol;
    rep.trials = int(points.size());
    for (const auto& u : points) {
        auto logu = to_logs(u);
        auto base = apply_rational_matrix_log(g.g, iteration_map_log(b, m, logu));
        for (int kv = 0; kv < rk.kernel.cols(); ++kv) {
            double tau = rng.uniform(-1.0, 1.0);
            auto shifted = logu;
            for (int i = 0; i < int(shifted.size()); ++i)
                shifted[i] += (long double)(tau * to_double(rk.kernel(i, kv)));
            auto moved = apply_rational_matrix_log(g.g, iteration_map_log(b, m, shifted));
            for (size_t i = 0; i < base.size(); ++i)
                rep.max_residual = std::max(rep.max_residual, rel_err_from_logs(moved[i], base[i]));
        }
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

PointReport verify_symplectic(const ReducedMapEvaluator& e,
                              const std::vector<std::vector<double>>& reduced_points, double tol) {
    PointReport rep;
    rep.tol = tol;
    rep.trials = int(reduced_points.size());
    const RatMat omega0 = canonical_pairing(e.reduced_dim() / 2);
    LogMap phat = [&e](const std::vector<Dual>& logy) { return e.eval_log(logy); };
    for (const auto& y : reduced_points) {
        std::vector<double> logy(y.size());
        for (size_t i = 0; i < y.size(); ++i) logy[i] = std::log(y[i]);
        LogJacobian d = log_jacobian(phat, logy);
        rep.max_residual = std::max(rep.max_residual, congruence_residual(d, omega0, omega0));
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

} // namespace cimred
