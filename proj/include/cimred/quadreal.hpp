#pragma once

// Quad-precision scalar for long orbit evaluation. Cluster orbits grow
// doubly exponentially (|log u| reaches 1e10..1e14 within 10-20 steps), so
// per-step residual checks need ~20+ significant digits; __float128 keeps
// the log-domain state accurate to ~1e-19 relative.

#include <quadmath.h>

namespace cimred {

using QuadReal = __float128;

inline QuadReal log_add_exp(QuadReal a, QuadReal b) {
    QuadReal hi = a >= b ? a : b;
    QuadReal lo = a >= b ? b : a;
    return hi + log1pq(expq(lo - hi));
}

inline long double quad_to_ld(QuadReal x) { return (long double)x; }

// |exp(a - b) - 1| as double, for relative comparisons on the log scale.
inline double quad_rel_err(QuadReal a, QuadReal b) {
    return (double)fabsq(expm1q(a - b));
}

} // namespace cimred
