#pragma once

// Log 2-forms sum w_ij du_i/u_i ^ du_j/u_j with exact rational coefficient
// matrices: rank/kernel, the pullback laws under the cyclic shift and under
// mutation, and numerical invariance checks via log-Jacobian congruence.

#include <functional>
#include <vector>

#include "cimred/dual.hpp"
#include "cimred/exactmat.hpp"
#include "cimred/quiver.hpp"
#include "cimred/rng.hpp"

namespace cimred {

enum class FormProvenance { standard_from_b, scaled, residual };

struct LogTwoForm {
    RatMat w; // skew-symmetric
    FormProvenance provenance = FormProvenance::standard_from_b;

    int dim() const { return w.rows(); }
};

LogTwoForm make_log_two_form(RatMat w, FormProvenance provenance);

// Coefficient matrix of the standard form is B itself.
LogTwoForm standard_form(const ExchangeMatrix& b);

LogTwoForm scale_form(const LogTwoForm& w, const Rational& lambda); // lambda != 0

struct RankKernel {
    int rank = 0;   // always even for a skew form
    RatMat kernel;  // columns = exact basis of ker W
};

RankKernel rank_and_kernel(const LogTwoForm& w);

// Coefficient matrix sigma^{-m} W sigma^m (exact index shift).
LogTwoForm pullback_by_sigma(const LogTwoForm& w, int m);

// mu_k^* of the standard form has coefficient matrix mu_k(B).
LogTwoForm pullback_by_mutation(const ExchangeMatrix& b, int node);

struct LogJacobian {
    int rows = 0, cols = 0;
    std::vector<double> d; // row-major, D_ai = d log(map_a) / d log(u_i)

    double& at(int i, int j) { return d[size_t(i) * cols + j]; }
    double at(int i, int j) const { return d[size_t(i) * cols + j]; }
};

// A positive-point map expressed on log coordinates over dual numbers.
using LogMap = std::function<std::vector<Dual>(const std::vector<Dual>&)>;

// Forward-mode Jacobian of `map_log` at the given log-point.
LogJacobian log_jacobian(const LogMap& map_log, const std::vector<double>& log_point);
LogJacobian log_jacobian(const LogMap& map_log, const ClusterPoint& u);

// Log map of the single mutation mu_k and of the iteration map, for use
// with log_jacobian.
LogMap mutation_log_map(const ExchangeMatrix& b, int node);
LogMap iteration_log_map(const ExchangeMatrix& b, int m);

// max |D^T A D - C|
double congruence_residual(const LogJacobian& d, const RatMat& a, const RatMat& c);

struct InvarianceReport {
    bool exact_holds = false;  // mu_m o ... o mu_1 (B) == sigma^{-m} B sigma^m
    bool numeric_pass = false; // all residuals below tol
    bool verdicts_agree = false;
    double max_residual = 0.0;
    double tol = 0.0;
    int trials = 0;
    std::vector<double> worst_point;
};

// Invariance check: numeric pullback congruence D^T B D = B at each
// point, cross-checked against the exact matrix criterion.
InvarianceReport check_form_invariance(const ExchangeMatrix& b, int m,
                                       const std::vector<ClusterPoint>& points, double tol);

} // namespace cimred
