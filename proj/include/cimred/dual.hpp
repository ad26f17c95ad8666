#pragma once

// Forward-mode dual numbers carrying a full gradient vector. Used to
// differentiate log-domain evaluators; no finite differences anywhere.

#include <cmath>
#include <vector>

namespace cimred {

struct Dual {
    double v = 0.0;
    std::vector<double> g; // d v / d seed_i

    Dual() = default;
    explicit Dual(double value, int dim = 0) : v(value), g(dim, 0.0) {}

    static Dual seed(double value, int dim, int index) {
        Dual d(value, dim);
        d.g[index] = 1.0;
        return d;
    }
};

inline Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.v + b.v, int(a.g.size()));
    for (size_t i = 0; i < r.g.size(); ++i) r.g[i] = a.g[i] + b.g[i];
    return r;
}

inline Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.v - b.v, int(a.g.size()));
    for (size_t i = 0; i < r.g.size(); ++i) r.g[i] = a.g[i] - b.g[i];
    return r;
}

inline Dual operator-(const Dual& a) {
    Dual r(-a.v, int(a.g.size()));
    for (size_t i = 0; i < r.g.size(); ++i) r.g[i] = -a.g[i];
    return r;
}

inline Dual operator*(const Dual& a, double c) {
    Dual r(a.v * c, int(a.g.size()));
    for (size_t i = 0; i < r.g.size(); ++i) r.g[i] = a.g[i] * c;
    return r;
}

inline Dual operator*(double c, const Dual& a) { return a * c; }

inline Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.v * b.v, int(a.g.size()));
    for (size_t i = 0; i < r.g.size(); ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    return r;
}

inline Dual operator/(const Dual& a, const Dual& b) {
    Dual r(a.v / b.v, int(a.g.size()));
    for (size_t i = 0; i < r.g.size(); ++i) r.g[i] = (a.g[i] * b.v - a.v * b.g[i]) / (b.v * b.v);
    return r;
}

inline Dual exp(const Dual& a) {
    double e = std::exp(a.v);
    Dual r(e, int(a.g.size()));
    for (size_t i = 0; i < r.g.size(); ++i) r.g[i] = e * a.g[i];
    return r;
}

inline Dual log(const Dual& a) {
    Dual r(std::log(a.v), int(a.g.size()));
    for (size_t i = 0; i < r.g.size(); ++i) r.g[i] = a.g[i] / a.v;
    return r;
}

inline Dual log1p(const Dual& a) {
    Dual r(std::log1p(a.v), int(a.g.size()));
    for (size_t i = 0; i < r.g.size(); ++i) r.g[i] = a.g[i] / (1.0 + a.v);
    return r;
}

// Stable log(exp a + exp b); derivative is the softmax-weighted blend.
inline Dual log_add_exp(const Dual& a, const Dual& b) {
    const bool a_hi = a.v >= b.v;
    const Dual& hi = a_hi ? a : b;
    const Dual& lo = a_hi ? b : a;
    double w = std::exp(lo.v - hi.v); // in [0, 1]
    Dual r(hi.v + std::log1p(w), int(a.g.size()));
    double whi = 1.0 / (1.0 + w);
    double wlo = w / (1.0 + w);
    for (size_t i = 0; i < r.g.size(); ++i) r.g[i] = whi * hi.g[i] + wlo * lo.g[i];
    return r;
}

inline double log_add_exp(double a, double b) {
    double hi = a >= b ? a : b;
    double lo = a >= b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

inline long double log_add_exp(long double a, long double b) {
    long double hi = a >= b ? a : b;
    long double lo = a >= b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

} // namespace cimred
