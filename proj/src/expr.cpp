#include "cimred/expr.hpp"

#include <algorithm>
#include <cmath>

namespace cimred {

ExprPtr Expr::make_monomial(std::vector<Rational> exponents) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::monomial;
    e->exponents = std::move(exponents);
    return e;
}

ExprPtr Expr::make_one(int nvars) { return make_monomial(std::vector<Rational>(nvars)); }

ExprPtr Expr::make_sum(std::vector<ExprPtr> children) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::sum;
    e->children = std::move(children);
    return e;
}

ExprPtr Expr::make_product(std::vector<ExprPtr> children) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::product;
    e->children = std::move(children);
    return e;
}

ExprPtr Expr::make_power(ExprPtr child, Rational power) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::power;
    e->children.push_back(std::move(child));
    e->power = std::move(power);
    return e;
}

ExprEvaluator::ExprEvaluator(std::vector<long double> log_vars) : logs_(std::move(log_vars)) {}

long double ExprEvaluator::eval_log(const ExprPtr& e) {
    auto it = memo_.find(e.get());
    if (it != memo_.end()) return it->second;

    long double v = 0.0L;
    switch (e->kind) {
        case Expr::Kind::monomial:
            for (size_t i = 0; i < e->exponents.size(); ++i) {
                double c = to_double(e->exponents[i]);
                if (c != 0.0) v += logs_[i] * (long double)c;
            }
            break;
        case Expr::Kind::sum: {
            v = eval_log(e->children[0]);
            for (size_t i = 1; i < e->children.size(); ++i)
                v = log_add_exp(v, eval_log(e->children[i]));
            break;
        }
        case Expr::Kind::product:
            for (const auto& c : e->children) v += eval_log(c);
            break;
        case Expr::Kind::power:
            v = eval_log(e->children[0]) * (long double)to_double(e->power);
            break;
    }
    memo_.emplace(e.get(), v);
    return v;
}

long double eval_expr_log(const ExprPtr& e, const std::vector<long double>& log_vars) {
    ExprEvaluator ev(log_vars);
    return ev.eval_log(e);
}

std::vector<ExprPtr> reduced_expression(const ExchangeMatrix& b, int m, const DarbouxBasis& g,
                                        const Section& s) {
    if (!is_period(b, m)) fail(Errc::not_periodic, "reduced expression needs a verified period");
    const int n = b.size();
    const int nvars = s.s.cols();

    // lift: u_i as monomials in y with exponents from row i of S
    std::vector<ExprPtr> u(n);
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> ex(nvars);
        for (int j = 0; j < nvars; ++j) ex[j] = s.s(i, j);
        u[i] = Expr::make_monomial(std::move(ex));
    }

    // phi: exchange relation at each step, matrix mutating alongside
    ExchangeMatrix cur = b;
    for (int step = 0; step < m; ++step) {
        const int k = step % n;
        std::vector<ExprPtr> pos, neg;
        for (int j = 0; j < n; ++j) {
            const BigInt& e = cur.entry(k, j);
            if (e > 0)
                pos.push_back(Expr::make_power(u[j], Rational(e)));
            else if (e < 0)
                neg.push_back(Expr::make_power(u[j], Rational(BigInt(-e))));
        }
        ExprPtr a_plus = pos.empty() ? Expr::make_one(nvars)
                                     : (pos.size() == 1 ? pos[0] : Expr::make_product(pos));
        ExprPtr a_minus = neg.empty() ? Expr::make_one(nvars)
                                      : (neg.size() == 1 ? neg[0] : Expr::make_product(neg));
        ExprPtr numer = Expr::make_sum({a_plus, a_minus});
        u[k] = Expr::make_product({numer, Expr::make_power(u[k], Rational(-1))});
        cur = mutate_matrix(cur, k + 1);
    }
    std::rotate(u.begin(), u.begin() + (m % n), u.end());

    // pi: reduced coordinates as rational powers of the mapped variables
    std::vector<ExprPtr> out(g.g.rows());
    for (int i = 0; i < g.g.rows(); ++i) {
        std::vector<ExprPtr> factors;
        for (int j = 0; j < n; ++j)
            if (g.g(i, j) != 0) factors.push_back(Expr::make_power(u[j], g.g(i, j)));
        out[i] = factors.empty() ? Expr::make_one(nvars)
                                 : (factors.size() == 1 ? factors[0] : Expr::make_product(factors));
    }
    return out;
}

} // namespace cimred
