#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace cimred;
using namespace testutil;

TEST_CASE("exchange matrix validation") {
    CHECK_NOTHROW(quiver({{0, 1}, {-1, 0}}));
    CHECK_THROWS_AS(quiver({{0, 1}, {1, 0}}), Error);    // symmetric
    CHECK_THROWS_AS(quiver({{1, 1}, {-1, 0}}), Error);   // nonzero diagonal
    CHECK_THROWS_AS(quiver({{0, 1, 2}, {-1, 0, 3}}), Error); // not square
    try {
        quiver({{0, 1}, {1, 0}});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_skew_symmetric);
    }
}

TEST_CASE("six-node family matches the printed rows") {
    ExchangeMatrix b = q_2_13_5_7(); // (r,s,t,p) = (2,13,5,7)
    CHECK(b.entries() == intmat({{0, -2, 13, -7, 13, -5},
                                 {2, 0, -31, 13, -33, 13},
                                 {-13, 31, 0, 24, 13, -7},
                                 {7, -13, -24, 0, -31, 13},
                                 {-13, 33, -13, 31, 0, -2},
                                 {5, -13, 7, -13, 2, 0}}));

    // (1,1,2,3): row 3 entry b_34 = -r - s(t-p) = -1 - (2-3) = 0
    ExchangeMatrix c = q_1_1_2_3();
    for (int j = 0; j < 6; ++j) {
        long expected[6] = {-1, 3, 0, 0, 1, -3};
        CHECK(c.entry(2, j) == expected[j]);
    }

    ExchangeMatrix d = q_2_6_2_4(); // (2,6,2,4)
    for (int j = 0; j < 6; ++j) {
        long row1[6] = {0, -2, 6, -4, 6, -2};
        long row2[6] = {2, 0, -14, 6, -16, 6};
        CHECK(d.entry(0, j) == row1[j]);
        CHECK(d.entry(1, j) == row2[j]);
    }

    CHECK_THROWS_AS(fomin6({0, 1, 1, 1}), Error);
}

TEST_CASE("matrix mutation") {
    ExchangeMatrix b = quiver({{0, 1}, {-1, 0}});
    CHECK(mutate_matrix(b, 1).entries() == intmat({{0, -1}, {1, 0}}));

    // hand-applied exchange relation: b'_13 = -1 + (2*3 + 2*3)/2 = 5
    ExchangeMatrix c = quiver({{0, 2, -1}, {-2, 0, 3}, {1, -3, 0}});
    CHECK(mutate_matrix(c, 2).entries() == intmat({{0, -2, 5}, {2, 0, -3}, {-5, 3, 0}}));

    CHECK_THROWS_AS(mutate_matrix(c, 0), Error);
    CHECK_THROWS_AS(mutate_matrix(c, 4), Error);
}

TEST_CASE("mutation at node 1 conjugates when r = t") {
    for (auto [r, s, t, p] : {std::tuple{2LL, 6LL, 2LL, 4LL}, {1LL, 3LL, 1LL, 2LL}, {3LL, 2LL, 3LL, 7LL}}) {
        ExchangeMatrix b = fomin6({r, s, t, p});
        CHECK(mutate_matrix(b, 1) == sigma_conjugate(b, 1));
    }
}

TEST_CASE("sigma conjugation") {
    ExchangeMatrix b = q_2_13_5_7();
    CHECK(sigma_conjugate(b, 0) == b);
    CHECK(sigma_conjugate(b, 6) == b);
    CHECK(sigma_conjugate(b, 2) == mutate_matrix(mutate_matrix(b, 1), 2));

    SplitMix64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        ExchangeMatrix m = random_skew(rng, int(rng.uniform_int(2, 7)), 5);
        int a = int(rng.uniform_int(0, 9)), c = int(rng.uniform_int(0, 9));
        CHECK(sigma_conjugate(m, a + c) == sigma_conjugate(sigma_conjugate(m, a), c));
    }
}

TEST_CASE("period detection") {
    auto p1 = detect_period(q_2_6_2_4());
    REQUIRE(p1.period.has_value());
    CHECK(*p1.period == 1);
    CHECK(p1.mutated == p1.conjugated); // exact certificate

    auto p2 = detect_period(q_2_13_5_7());
    REQUIRE(p2.period.has_value());
    CHECK(*p2.period == 2);
    CHECK(p2.mutated == p2.conjugated);
    CHECK(p2.conjugated == sigma_conjugate(q_2_13_5_7(), 2));

    auto pz = detect_period(quiver({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
    REQUIRE(pz.period.has_value());
    CHECK(*pz.period == 1);

    CHECK(is_period(q_2_13_5_7(), 2));
    CHECK_FALSE(is_period(q_2_13_5_7(), 1));
}

TEST_CASE("a generic skew matrix has no period up to the bound") {
    ExchangeMatrix b = quiver({{0, 2, -1, 4, 0}, {-2, 0, 3, -1, 2}, {1, -3, 0, 1, -4},
                               {-4, 1, -1, 0, 2}, {0, -2, 4, -2, 0}});
    auto pr = detect_period(b, 12);
    CHECK_FALSE(pr.period.has_value());
    CHECK(pr.bound == 12);
}

TEST_CASE("cluster mutation at a point") {
    ExchangeMatrix b = q_2_13_5_7();
    ClusterPoint ones(std::vector<double>(6, 1.0));
    auto [b2, u2] = mutate_point(b, 1, ones);
    CHECK(u2.values[0] == doctest::Approx(2.0).epsilon(1e-14)); // (1 + 1)/1
    for (int i = 1; i < 6; ++i) CHECK(u2.values[i] == 1.0);
    CHECK(b2 == mutate_matrix(b, 1));

    // zero row: both products empty, u'_k = 2/u_k
    ExchangeMatrix z = quiver({{0, 0}, {0, 0}});
    ClusterPoint u(std::vector<double>{4.0, 3.0});
    auto [z2, v] = mutate_point(z, 1, u);
    CHECK(v.values[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v.values[1] == 3.0);

    CHECK_THROWS_AS(ClusterPoint(std::vector<double>{1.0, -2.0}), Error);
    CHECK_THROWS_AS(ClusterPoint(std::vector<double>{0.0}), Error);
    CHECK_THROWS_AS(mutate_point(b, 7, ones), Error);
}

TEST_CASE("point mutation is an involution") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        int n = int(rng.uniform_int(2, 8));
        ExchangeMatrix b = random_skew(rng, n, 5);
        int k = int(rng.uniform_int(1, n));
        ClusterPoint u = random_point(rng, n);

        CHECK(mutate_matrix(mutate_matrix(b, k), k) == b); // exact

        auto [b2, v] = mutate_point(b, k, u);
        auto [b3, w] = mutate_point(b2, k, v);
        for (int i = 0; i < n; ++i) CHECK(rel_err(w.values[i], u.values[i]) < 1e-12);
    }
}

TEST_CASE("iteration map on the worked example") {
    ExchangeMatrix b = q_2_13_5_7();
    ClusterPoint ones(std::vector<double>(6, 1.0));
    ClusterPoint out = iteration_map(b, 2, ones);
    double expected[6] = {1, 1, 1, 1, 2, 5}; // u7 = 2, u8 = (1 + 1*1*2^2)/1 = 5
    for (int i = 0; i < 6; ++i) CHECK(out.values[i] == doctest::Approx(expected[i]).epsilon(1e-13));
}

TEST_CASE("one-periodic iteration map shifts and appends the exchange value") {
    // u7 u1 = u2^r u4^p u6^r + u3^s u5^s with r = t
    QuiverFamilyParams q{3, 2, 3, 5};
    ExchangeMatrix b = fomin6(q);
    SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        ClusterPoint u = random_point(rng, 6);
        ClusterPoint out = iteration_map(b, 1, u);
        const auto& v = u.values;
        double u7 = (std::pow(v[1], 3) * std::pow(v[3], 5) * std::pow(v[5], 3) +
                     std::pow(v[2], 2) * std::pow(v[4], 2)) /
                    v[0];
        for (int i = 0; i < 5; ++i) CHECK(out.values[i] == doctest::Approx(v[i + 1]).epsilon(1e-12));
        CHECK(rel_err(out.values[5], u7) < 1e-12);
    }
}

TEST_CASE("iterating every node of the zero matrix inverts all coordinates") {
    // sigma^n is the identity shift; each mutation sends u_k to 2/u_k
    ExchangeMatrix z = quiver({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
    ClusterPoint u(std::vector<double>{2.0, 4.0, 0.5, 8.0});
    ClusterPoint out = iteration_map(z, 4, u);
    double expected[4] = {1.0, 0.5, 4.0, 0.25};
    for (int i = 0; i < 4; ++i) CHECK(out.values[i] == doctest::Approx(expected[i]).epsilon(1e-14));
}

TEST_CASE("iteration map preserves positivity at extreme points") {
    ExchangeMatrix b = q_2_13_5_7();
    for (double mag : {-250.0, 250.0}) {
        std::vector<long double> logs(6, (long double)mag);
        auto out = iteration_map_log(b, 2, logs);
        for (auto l : out) CHECK(std::isfinite((double)l));
    }
}

TEST_CASE("recurrence rendering") {
    // matrix-derived order-6 relation for (r,s,t,p) = (2,6,2,4)
    CHECK(render_recurrence(q_2_6_2_4(), 1) ==
          "u[n+6]·u[n] = u[n+1]^2·u[n+3]^4·u[n+5]^2 + u[n+2]^6·u[n+4]^6");

    // two-line plane system for (1,1,2,3)
    CHECK(render_recurrence(q_1_1_2_3(), 2) ==
          "x[n+3]·x[n] = y[n]·y[n+1]^3·y[n+2]^2 + x[n+1]·x[n+2]\n"
          "y[n+3]·y[n] = x[n+1]^2·x[n+2]^3·x[n+3] + y[n+1]·y[n+2]");

    CHECK(render_recurrence(quiver({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}), 1) ==
          "u[n+3]·u[n] = 2");

    // odd node count with m = 2: no strand split, classes annotated by stride
    ExchangeMatrix z5 = quiver({{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}});
    CHECK(render_recurrence(z5, 2) ==
          "u[n+5]·u[n] = 2   (n = 1, 3, 5, ...)\n"
          "u[n+5]·u[n] = 2   (n = 2, 4, 6, ...)");

    CHECK_THROWS_AS(render_recurrence(q_2_13_5_7(), 1), Error); // 1 is not a period here
}

TEST_CASE("mutation keeps matrices skew and integral under long sequences") {
    SplitMix64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        int n = int(rng.uniform_int(2, 7));
        ExchangeMatrix b = random_skew(rng, n, 4);
        for (int step = 0; step < 12; ++step) {
            b = mutate_matrix(b, int(rng.uniform_int(1, n)));
            CHECK(is_skew_symmetric(b.entries()));
        }
    }
}
