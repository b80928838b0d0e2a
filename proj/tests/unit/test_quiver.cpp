/*
   Copyright 2025 The kq authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#include <random>

#include "doctest.h"
#include "kq/quiver.hpp"

using namespace kq;

namespace {

ExactMatrix mat(int r, int c, std::vector<long> v) {
    ExactMatrix a(r, c);
    for (int k = 0; k < r * c; ++k) a(k / c, k % c) = CycScalar(v[k]);
    return a;
}

QuiverPoint point1(long x, long y, long i, long j, long tau = 1) {
    return QuiverPoint{int_context(1, {tau}), 0, {1}, mat(1, 1, {x}), mat(1, 1, {y}), mat(1, 1, {i}), mat(1, 1, {j})};
}

ExactMatrix random_gauge(std::mt19937_64& rng, const QuiverPoint& p) {
    std::uniform_int_distribution<int> d(-2, 2);
    while (true) {
        ExactMatrix g = zeros<CycScalar>(p.N(), p.N());
        for (int r = 0; r < p.N(); ++r)
            for (int c = 0; c < p.N(); ++c)
                if (p.block_of(r) == p.block_of(c)) g(r, c) = CycScalar(Rational(d(rng)), p.ctx->m());
        if (!det(g).is_zero()) return g;
    }
}

// all dims tuples with sum <= s
std::vector<std::vector<int>> tuples(int m, int s) {
    std::vector<std::vector<int>> out{{}};
    for (int b = 0; b < m; ++b) {
        std::vector<std::vector<int>> next;
        for (auto& t : out)
            for (int k = 0; k <= s; ++k) {
                int sum = k;
                for (int v : t) sum += v;
                if (sum > s) break;
                auto u = t;
                u.push_back(k);
                next.push_back(u);
            }
        out = next;
    }
    return out;
}

}  // namespace

TEST_CASE("validate_point examples") {
    CHECK(validate_point(point1(0, 0, 1, 1)).empty());
    CHECK_FALSE(validate_point(point1(0, 0, 0, 0)).empty());
    QuiverPoint p{int_context(2, {5, 1}), 0, {1, 0}, mat(1, 1, {0}), mat(1, 1, {0}), mat(1, 1, {1}), mat(1, 1, {5})};
    CHECK(validate_point(p).empty());
    // grading violation: X inside U_0 -> U_0 for m = 2
    p.X(0, 0) = CycScalar(1);
    auto rep = validate_point(p);
    CHECK_FALSE(rep.empty());
    CHECK(rep.front().find("grading") != std::string::npos);
    // bad shape
    QuiverPoint q = point1(0, 0, 1, 1);
    q.j = mat(1, 2, {1, 1});
    CHECK_FALSE(validate_point(q).empty());
}

TEST_CASE("stability examples") {
    CHECK(check_stability(point1(0, 0, 1, 1)));
    CHECK_FALSE(check_stability(point1(0, 0, 0, 0)));
    // tau = 1: every sampled valid point is stable
    for (int m = 2; m <= 3; ++m) {
        auto ctx = int_context(m, std::vector<long>(m, 1));
        for (auto& d : tuples(m, 3)) {
            if (cyclic_dimension(m, 0, d) < 0) continue;
            auto p = random_point(ctx, 0, d, 17);
            CHECK(check_stability(p));
        }
    }
}

TEST_CASE("gauge_apply") {
    auto p = point1(2, 3, 1, 1);
    CHECK(gauge_apply(p, identity<CycScalar>(1)).i == p.i);
    auto q = gauge_apply(p, mat(1, 1, {4}));
    CHECK(q.X == p.X);
    CHECK(q.Y == p.Y);
    CHECK(q.i(0, 0) == CycScalar(4));
    CHECK(q.j(0, 0) == CycScalar(Rational(1, 4)));
    CHECK_THROWS_AS(gauge_apply(p, mat(1, 1, {0})), GaugeError);

    std::mt19937_64 rng(1);
    auto ctx = int_context(2, {1, 1});
    auto r = random_point(ctx, 0, {1, 1}, 3);
    ExactMatrix off = identity<CycScalar>(2);
    off(0, 1) = CycScalar(1);
    CHECK_THROWS_AS(gauge_apply(r, off), GaugeError);
    for (int t = 0; t < 10; ++t) {
        auto g = random_gauge(rng, r);
        auto s = gauge_apply(r, g);
        CHECK(validate_point(s).empty());
        CHECK(check_stability(s));
    }
}

TEST_CASE("gauge_equivalent") {
    std::mt19937_64 rng(2);
    for (int m = 1; m <= 3; ++m) {
        std::vector<long> tau(m, 1);
        tau[0] = 2;
        auto ctx = int_context(m, tau);
        std::vector<int> dims(m, 1);
        dims[0] = 2;
        auto p = random_point(ctx, 0, dims, 10 + m);
        auto g0 = random_gauge(rng, p);
        auto q = gauge_apply(p, g0);
        auto w = gauge_equivalent(p, q);
        REQUIRE(w);
        CHECK(equal(*w, g0));
    }
    auto a = point1(0, 0, 1, 1), b = point1(0, 0, -1, -1);
    auto w = gauge_equivalent(a, b);
    REQUIRE(w);
    CHECK((*w)(0, 0) == CycScalar(-1));
    CHECK_FALSE(gauge_equivalent(point1(0, 0, 1, 1), point1(1, 0, 1, 1)));
    CHECK_THROWS_AS(gauge_equivalent(point1(0, 0, 0, 0), point1(0, 0, 1, 1)), StabilityError);
}

TEST_CASE("pack and unpack cyclic") {
    auto ctx = int_context(2, {1, 1});
    CyclicQuiverPoint c{ctx, 0, {1, 1}, {mat(1, 1, {2}), mat(1, 1, {3})}, {mat(1, 1, {0}), mat(1, 1, {0})}, mat(1, 1, {1}),
                        mat(1, 1, {0})};
    // X0 Y0 - Y1 X1 + 1 = i j on V_0 and X1 Y1 - Y0 X0 + 1 = 0 on V_1
    c.Y[0] = mat(1, 1, {0});
    c.Y[1](0, 0) = CycScalar(Rational(-1, 3));
    c.j = mat(1, 1, {2});
    auto p = pack_cyclic(c);
    CHECK(p.X == mat(2, 2, {0, 2, 3, 0}));
    auto back = unpack_cyclic(p);
    for (int b = 0; b < 2; ++b) {
        CHECK(back.X[b] == c.X[b]);
        CHECK(back.Y[b] == c.Y[b]);
    }
    CHECK(back.i == c.i);
    CHECK(back.j == c.j);

    // m = 1 is a reshaping
    CyclicQuiverPoint c1{int_context(1, {1}), 0, {1}, {mat(1, 1, {5})}, {mat(1, 1, {7})}, mat(1, 1, {1}), mat(1, 1, {1})};
    auto p1 = pack_cyclic(c1);
    CHECK(p1.X == c1.X[0]);
    CHECK(p1.Y == c1.Y[0]);

    // relation violations
    c.j = mat(1, 1, {3});
    CHECK_THROWS_AS(pack_cyclic(c), ValidationError);

    // random round trips, m = 3
    auto c3 = int_context(3, {1, 1, 1});
    for (int s = 0; s < 5; ++s) {
        auto q = random_point(c3, 0, {1, 1, 1}, 100 + s);
        auto u = unpack_cyclic(q);
        auto r = pack_cyclic(u);
        CHECK(r.X == q.X);
        CHECK(r.Y == q.Y);
        CHECK(r.i == q.i);
        CHECK(r.j == q.j);
    }
}

TEST_CASE("expected dimension closed forms") {
    CHECK(expected_dimension(2, 0, {1, 0}) == 0);
    CHECK(expected_dimension(3, 0, {1, 1, 1}) == 2);
    CHECK(expected_dimension(2, 0, {0, 1}) == -2);
    CHECK(expected_dimension(1, 0, {3}) == 6);
    // agrees with the cyclic adjacency count for m <= 3
    for (int m = 1; m <= 3; ++m)
        for (auto& d : tuples(m, 5))
            for (int n = 0; n < m; ++n) CHECK(expected_dimension(m, n, d) == cyclic_dimension(m, n, d));
}

TEST_CASE("tangent dimension") {
    QuiverPoint p{int_context(2, {1, 1}), 0, {1, 0}, mat(1, 1, {0}), mat(1, 1, {0}), mat(1, 1, {1}), mat(1, 1, {1})};
    CHECK(validate_point(p).empty());
    CHECK(tangent_dimension(p) == 0);
    CHECK(tangent_dimension(point1(0, 0, 1, 1)) == 2);
    CHECK(tangent_dimension(point1(3, -1, 1, 1)) == 2);
    CHECK_THROWS_AS(tangent_dimension(point1(0, 0, 0, 0)), ValidationError);
    for (int m = 2; m <= 3; ++m) {
        auto ctx = int_context(m, std::vector<long>(m, 1));
        for (auto& d : tuples(m, 4))
            for (int n = 0; n < m; ++n) {
                if (cyclic_dimension(m, n, d) < 0) continue;
                auto q = random_point(ctx, n, d, 5);
                CHECK(stabilizer_dimension(q) == 0);
                CHECK(tangent_dimension(q) == expected_dimension(m, n, d));
            }
    }
}

TEST_CASE("random_point") {
    auto ctx = int_context(1, {1});
    auto p = random_point(ctx, 0, {1}, 4);
    CHECK(validate_point(p).empty());
    CHECK(p.i(0, 0) * p.j(0, 0) == CycScalar(1));
    auto c2 = int_context(2, {1, 1});
    CHECK_THROWS_AS(random_point(c2, 0, {0, 1}, 1), GenerationError);
    auto c3 = int_context(3, {2, -1, 3});
    auto a = random_point(c3, 1, {1, 2, 1}, 99), b = random_point(c3, 1, {1, 2, 1}, 99);
    CHECK(a.X == b.X);
    CHECK(a.Y == b.Y);
    CHECK(a.i == b.i);
    CHECK(a.j == b.j);
    CHECK(validate_point(a).empty());
    CHECK(check_stability(a));
}

TEST_CASE("eval_word on points") {
    auto p = point1(0, 0, 1, 1);
    auto X = FreeSum::letter(Letter::X), Y = FreeSum::letter(Letter::Y);
    // XY - YX = ij - T = 0 here
    CHECK(is_zero(eval_word(X * Y - Y * X, p)));
    CHECK(eval_word(FreeSum::scalar(CycScalar(1)), p) == identity<CycScalar>(1));
    QuiverPoint q{int_context(2, {1, 1}), 0, {1, 1}, zeros<CycScalar>(2, 2), zeros<CycScalar>(2, 2), zeros<CycScalar>(2, 1),
                  zeros<CycScalar>(1, 2)};
    CHECK(eval_word(FreeSum::letter(Letter::E, 0), q) == mat(2, 2, {1, 0, 0, 0}));
    // commutator identity at a random point
    auto r = random_point(int_context(3, {1, 2, 3}), 2, {1, 1, 2}, 8);
    auto comm = eval_word(X * Y - Y * X, r);
    CHECK(equal<CycScalar>(comm + r.T(), matmul<CycScalar>(r.i, r.j)));
}
