#include "cimred/forms.hpp"

#include <cmath>

namespace cimred {

LogTwoForm make_log_two_form(RatMat w, FormProvenance provenance) {
    if (!is_skew_symmetric(w)) fail(Errc::not_skew_symmetric, "form coefficient matrix not skew");
    return LogTwoForm{std::move(w), provenance};
}

LogTwoForm standard_form(const ExchangeMatrix& b) {
    return LogTwoForm{to_rational(b.entries()), FormProvenance::standard_from_b};
}

LogTwoForm scale_form(const LogTwoForm& w, const Rational& lambda) {
    if (lambda == 0) fail(Errc::zero_scale, "form scale must be nonzero");
    return LogTwoForm{scale(w.w, lambda), FormProvenance::scaled};
}

RankKernel rank_and_kernel(const LogTwoForm& w) {
    EliminationResult e = eliminate(w.w);
    if (e.rank % 2 != 0) fail(Errc::internal, "skew form with odd rank");
    return RankKernel{e.rank, e.kernel};
}

LogTwoForm pullback_by_sigma(const LogTwoForm& w, int m) {
    const int n = w.dim();
    auto shift = [&](int i) { return ((i - m) % n + n) % n; };
    RatMat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = w.w(shift(i), shift(j));
    return LogTwoForm{std::move(out), w.provenance};
}

LogTwoForm pullback_by_mutation(const ExchangeMatrix& b, int node) {
    return standard_form(mutate_matrix(b, node));
}

LogJacobian log_jacobian(const LogMap& map_log, const std::vector<double>& log_point) {
    const int n = int(log_point.size());
    std::vector<Dual> seeded(n);
    for (int i = 0; i < n; ++i) seeded[i] = Dual::seed(log_point[i], n, i);
    std::vector<Dual> out = map_log(seeded);
    LogJacobian j;
    j.rows = int(out.size());
    j.cols = n;
    j.d.resize(size_t(j.rows) * n);
    for (int a = 0; a < j.rows; ++a)
        for (int i = 0; i < n; ++i) j.at(a, i) = out[a].g[i];
    return j;
}

LogJacobian log_jacobian(const LogMap& map_log, const ClusterPoint& u) {
    std::vector<double> logs(u.values.size());
    for (size_t i = 0; i < logs.size(); ++i) logs[i] = std::log(u.values[i]);
    return log_jacobian(map_log, logs);
}

LogMap mutation_log_map(const ExchangeMatrix& b, int node) {
    if (node < 1 || node > b.size()) fail(Errc::index_out_of_range, "mutation node out of range");
    return [b, node](const std::vector<Dual>& logu) {
        std::vector<Dual> v = logu;
        mutate_point_log(b.entries(), node - 1, v);
        return v;
    };
}

LogMap iteration_log_map(const ExchangeMatrix& b, int m) {
    return [b, m](const std::vector<Dual>& logu) { return iteration_map_log(b, m, logu); };
}

double congruence_residual(const LogJacobian& d, const RatMat& a, const RatMat& c) {
    if (a.rows() != d.rows || a.cols() != d.rows || c.rows() != d.cols || c.cols() != d.cols)
        fail(Errc::shape_mismatch, "congruence shapes");
    const int n = d.rows, p = d.cols;
    // AD = A * D, then D^T * AD - C
    std::vector<double> ad(size_t(n) * p, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double aik = to_double(a(i, k));
            if (aik == 0.0) continue;
            for (int j = 0; j < p; ++j) ad[size_t(i) * p + j] += aik * d.at(k, j);
        }
    double worst = 0.0;
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += d.at(k, i) * ad[size_t(k) * p + j];
            worst = std::max(worst, std::abs(s - to_double(c(i, j))));
        }
    return worst;
}

InvarianceReport check_form_invariance(const ExchangeMatrix& b, int m,
                                       const std::vector<ClusterPoint>& points, double tol) {
    InvarianceReport rep;
    rep.tol = tol;
    rep.trials = int(points.size());
    rep.exact_holds = is_period(b, m);

    const RatMat bq = to_rational(b.entries());
    LogMap phi = iteration_log_map(b, m);
    for (const auto& u : points) {
        LogJacobian d = log_jacobian(phi, u);
        double r = congruence_residual(d, bq, bq);
        if (r > rep.max_residual) {
            rep.max_residual = r;
            rep.worst_point = u.values;
        }
    }
    rep.numeric_pass = rep.max_residual < tol;
    rep.verdicts_agree = rep.numeric_pass == rep.exact_holds;
    return rep;
}

} // namespace cimred
