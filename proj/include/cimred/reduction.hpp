#pragma once

// Constructive Cartan/Darboux decomposition of a singular log form, the
// monomial projection pi and a rational section through it, evaluation of
// the reduced symplectic map, and the commuting-diagram / fiber /
// symplecticity verifiers.

#include <vector>

#include "cimred/exactmat.hpp"
#include "cimred/forms.hpp"
#include "cimred/quiver.hpp"
#include "cimred/rng.hpp"

namespace cimred {

struct DarbouxBasis {
    // Row i = coefficients of g_i in log coordinates; rows paired
    // (1,2),(3,4),...  Satisfies G^T J_can G = W exactly for the source W.
    RatMat g; // 2k x N

    int half_rank() const { return g.rows() / 2; }
    int ambient_dim() const { return g.cols(); }
};

// 2k x 2k block diagonal of [[0,1],[-1,0]] blocks.
RatMat canonical_pairing(int half_rank);

// Cartan's constructive step iterated to exhaustion. Pivot rule: the
// lexicographically first (i,j), i < j, with nonzero residual entry, in the
// original coordinate order. Rank 0 yields an empty basis.
DarbouxBasis cartan_reduce(const LogTwoForm& w);

// Exact check G^T J_can G = W.
bool verify_darboux(const DarbouxBasis& g, const LogTwoForm& w);

// y_i = exp(sum_j G_ij log u_j): the monomial reduced variables.
std::vector<double> projection(const DarbouxBasis& g, const ClusterPoint& u);

template <class T>
std::vector<T> apply_rational_matrix_log(const RatMat& m, const std::vector<T>& logs) {
    std::vector<T> out(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        T acc = logs.empty() ? T() : logs[0] * 0.0;
        for (int j = 0; j < m.cols(); ++j) {
            double c = to_double(m(i, j));
            if (c != 0.0) acc = acc + logs[j] * c;
        }
        out[i] = acc;
    }
    return out;
}

struct Section {
    RatMat s; // N x 2k with G * S = I exactly
};

// Deterministic right inverse: invert the leftmost independent column
// subset of G, embed, zero elsewhere.
Section build_section(const DarbouxBasis& g);

struct SymplecticChange {
    RatMat t; // 2k x 2k with T^T J_can T = J_can exactly
};

SymplecticChange make_symplectic_change(RatMat t); // validates exactly

// G' = T G; the Darboux identity for the same W is preserved.
DarbouxBasis apply_post_transform(const DarbouxBasis& g, const SymplecticChange& t);

// Evaluates the reduced map phi_hat(y) = pi(phi(lift(y))). Construction
// refuses an unverified period.
class ReducedMapEvaluator {
public:
    ReducedMapEvaluator(ExchangeMatrix b, int period, DarbouxBasis g, Section s);

    template <class T>
    std::vector<T> eval_log(const std::vector<T>& logy) const {
        auto logu = apply_rational_matrix_log(s_.s, logy);
        auto logw = iteration_map_log(b_, period_, std::move(logu));
        return apply_rational_matrix_log(g_.g, logw);
    }

    std::vector<double> eval(const std::vector<double>& y) const; // positive y

    int reduced_dim() const { return g_.g.rows(); }
    int ambient_dim() const { return b_.size(); }
    int period() const { return period_; }
    const ExchangeMatrix& matrix() const { return b_; }
    const DarbouxBasis& basis() const { return g_; }
    const Section& section() const { return s_; }

private:
    ExchangeMatrix b_;
    int period_;
    DarbouxBasis g_;
    Section s_;
};

struct PointReport {
    bool pass = false;
    double max_residual = 0.0;
    double tol = 0.0;
    int trials = 0;
};

// Commuting diagram: pi(phi(u)) vs phi_hat(pi(u)), relative, per point.
PointReport verify_commutation(const ExchangeMatrix& b, int m, const DarbouxBasis& g,
                               const Section& s, const std::vector<ClusterPoint>& points,
                               double tol);

// pi(phi(u . exp(tau xi))) = pi(phi(u)) for kernel directions xi and random
// tau in [-1, 1]. Throws FullRank when the form has trivial kernel.
PointReport verify_fiber_invariance(const DarbouxBasis& g, const ExchangeMatrix& b, int m,
                                    const std::vector<ClusterPoint>& points, double tol,
                                    SplitMix64& rng);

// D^T J_can D = J_can for the log-Jacobian D of phi_hat at each point.
PointReport verify_symplectic(const ReducedMapEvaluator& e,
                              const std::vector<std::vector<double>>& reduced_points, double tol);

} // namespace cimred
