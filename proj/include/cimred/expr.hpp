#pragma once

// Symbolic composition pi o phi o lift as a DAG over {monomial, sum,
// product, power} nodes with rational exponents. Guarantees numeric
// equivalence with the reduced-map evaluator; no canonical simplification.

#include <memory>
#include <unordered_map>
#include <vector>

#include "cimred/exactmat.hpp"
#include "cimred/quiver.hpp"
#include "cimred/reduction.hpp"

namespace cimred {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { monomial, sum, product, power };

    Kind kind;
    std::vector<Rational> exponents; // monomial: exponent per variable
    std::vector<ExprPtr> children;   // sum / product
    Rational power;                  // power: child ^ power

    static ExprPtr make_monomial(std::vector<Rational> exponents);
    static ExprPtr make_one(int nvars);
    static ExprPtr make_sum(std::vector<ExprPtr> children);
    static ExprPtr make_product(std::vector<ExprPtr> children);
    static ExprPtr make_power(ExprPtr child, Rational power);
};

// Evaluates log(expr) at the given log-coordinates of the (positive)
// variables; every subexpression is subtraction-free, so sums go through
// log-sum-exp. Shared nodes are evaluated once.
class ExprEvaluator {
public:
    explicit ExprEvaluator(std::vector<long double> log_vars);
    long double eval_log(const ExprPtr& e);

private:
    std::vector<long double> logs_;
    std::unordered_map<const Expr*, long double> memo_;
};

long double eval_expr_log(const ExprPtr& e, const std::vector<long double>& log_vars);

// One expression per reduced coordinate, over variables y_1..y_2k.
// Requires the period to be verified.
std::vector<ExprPtr> reduced_expression(const ExchangeMatrix& b, int m, const DarbouxBasis& g,
                                        const Section& s);

} // namespace cimred
