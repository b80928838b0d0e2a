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
#include "kq/scalars.hpp"

using namespace kq;

namespace {

CycScalar rand_cyc(std::mt19937_64& rng, int m) {
    std::uniform_int_distribution<int> d(-5, 5), den(1, 4);
    std::vector<Rational> c(euler_phi(m));
    for (auto& v : c) v = Rational(d(rng), den(rng));
    CycScalar r = CycScalar::from_coeffs(m, {});
    r = CycScalar(Rational(0), m);
    for (int k = 0; k < static_cast<int>(c.size()); ++k) r += CycScalar(c[k], m) * CycScalar::zeta(m, k);
    return r;
}

RatFunc rf(std::vector<long> num, std::vector<long> den = {1}) {
    std::vector<CycScalar> n, d;
    for (auto v : num) n.push_back(CycScalar(v));
    for (auto v : den) d.push_back(CycScalar(v));
    return RatFunc(CPoly(n), CPoly(d));
}

ExactMatrix rand_mat(std::mt19937_64& rng, int n, int m = 0) {
    std::uniform_int_distribution<int> d(-3, 3);
    ExactMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = m ? CycScalar(Rational(d(rng)), m) : CycScalar(d(rng));
    return a;
}

}  // namespace

TEST_CASE("cyclotomic examples") {
    CHECK(CycScalar::zeta(4) * CycScalar::zeta(4) == CycScalar(-1));
    CHECK(CycScalar::zeta(2) == CycScalar(-1));
    CHECK(CycScalar::zeta(2).is_rational());
    auto z = CycScalar::zeta(3);
    CHECK((CycScalar(1) + z) * (CycScalar(1) + z * z) == CycScalar(1));
    for (int m : {1, 2, 3, 4, 5, 6, 8, 12}) {
        auto zm = CycScalar::zeta(m);
        CycScalar p(Rational(1), m);
        for (int k = 0; k < m; ++k) p *= zm;
        CHECK(p == CycScalar(1));
        // Phi_m(zeta) = 0
        CycScalar acc(Rational(0), m), pw(Rational(1), m);
        for (const auto& c : cyclotomic_poly(m)) {
            acc += CycScalar(c, m) * pw;
            pw *= zm;
        }
        CHECK(acc.is_zero());
    }
    CHECK(cyclotomic_poly(6).size() == 3);
    CHECK_THROWS_AS(CycScalar(Rational(0), 3).inv(), DivisionByZero);
}

TEST_CASE("field axioms fuzz") {
    std::mt19937_64 rng(7);
    for (int m : {1, 2, 3, 4, 6}) {
        for (int t = 0; t < 500; ++t) {
            auto a = rand_cyc(rng, m), b = rand_cyc(rng, m), c = rand_cyc(rng, m);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK((a + b) - b == a);
            if (!a.is_zero()) CHECK(a * a.inv() == CycScalar(1));
        }
    }
}

TEST_CASE("rational embedding agrees") {
    Rational p(3, 7), q(-5, 2);
    CycScalar a(p, 3), b(q, 3);
    CHECK((a * b).rational() == p * q);
    CHECK((a + b).rational() == p + q);
    CHECK((a / b).rational() == p / q);
}

TEST_CASE("scalar text round trip") {
    std::mt19937_64 rng(11);
    for (int m : {1, 3, 4, 5}) {
        for (int t = 0; t < 50; ++t) {
            auto a = rand_cyc(rng, m);
            CHECK(CycScalar::parse(a.str(), m) == a);
        }
    }
    CHECK(CycScalar::parse("-3/7", 1).rational() == Rational(-3, 7));
    CHECK(CycScalar::parse("(1 + 2*z^2)", 3) == CycScalar(1) + CycScalar(2) * CycScalar::zeta(3, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("sector_project examples") {
    auto f = rf({0, 0, 1, 1});
    CHECK(sector_project(f, 0, 2) == rf({0, 0, 1}));
    auto g = rf({1}, {1, -1});
    auto g1 = sector_project(g, 1, 2);
    CHECK(g1 == rf({0, 1}, {1, 0, -1}));
    // geometric-series oracle
    auto s = series_at_zero(g1, 10);
    for (int k = 0; k < 10; ++k) CHECK(s[k] == CycScalar(k % 2 == 1 ? 1 : 0));
    CHECK(sector_project(g, 0, 1) == g);
}

TEST_CASE("sector_project sums to f and matches series") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int m : {2, 3, 4}) {
        for (int t = 0; t < 20; ++t) {
            std::vector<CycScalar> n(4), dd(3);
            for (auto& v : n) v = CycScalar(Rational(d(rng)), m);
            for (auto& v : dd) v = CycScalar(Rational(d(rng)), m);
            dd[0] = CycScalar(Rational(1 + std::abs(d(rng))), m);
            RatFunc f{CPoly(n), CPoly(dd)};
            RatFunc acc;
            auto sf = series_at_zero(f, 12);
            for (int r = 0; r < m; ++r) {
                auto fr = sector_project(f, r, m);
                acc += fr;
                auto sr = series_at_zero(fr, 12);
                for (int k = 0; k < 12; ++k) CHECK(sr[k] == (k % m == r ? sf[k] : CycScalar(0)));
            }
            CHECK(acc == f);
        }
    }
}

TEST_CASE("poly_part") {
    auto [p1, r1] = poly_part(rf({1, 0, 1}, {0, 1}));
    CHECK(p1 == CPoly(std::vector<CycScalar>{0, 1}));
    CHECK(r1 == rf({1}, {0, 1}));
    auto [p2, r2] = poly_part(rf({1}, {-3, 1}));
    CHECK(p2.is_zero());
    CHECK(r2 == rf({1}, {-3, 1}));
    auto [p3, r3] = poly_part(rf({0, 0, 0, 1}, {-1, 1}));
    CHECK(p3 == CPoly(std::vector<CycScalar>{1, 1, 1}));
    CHECK(r3 == rf({1}, {-1, 1}));
    CHECK(poly_part(r3).first.is_zero());
}

TEST_CASE("laurent expansion at infinity") {
    // x^3/(x-1) = x^2 + x + 1 + x^-1 + x^-2 + ...
    auto c = laurent_at_infinity(rf({0, 0, 0, 1}, {-1, 1}), -5);
    for (int e = -5; e <= 2; ++e) CHECK(c[e] == CycScalar(1));
    // 1/(x^2 - 2) = x^-2 + 2 x^-4 + ...
    auto c2 = laurent_at_infinity(rf({1}, {-2, 0, 1}), -6);
    CHECK(c2[-2] == CycScalar(1));
    CHECK(c2[-4] == CycScalar(2));
    CHECK(c2[-6] == CycScalar(4));
    CHECK(c2.count(-3) == 0);
}

TEST_CASE("rational function arithmetic stays reduced") {
    auto a = rf({1}, {-1, 1}), b = rf({1}, {1, 1});
    auto s = a + b;
    CHECK(s == rf({0, 2}, {-1, 0, 1}));
    CHECK((s * rf({-1, 0, 1})) == rf({0, 2}));
    CHECK((a - a).is_zero());
    CHECK((a / a) == RatFunc(CycScalar(1)));
    CHECK(a.derivative() == rf({-1}, {1, -2, 1}));
}

TEST_CASE("exact linear algebra") {
    auto I2 = identity<CycScalar>(2);
    CHECK(det(I2) == CycScalar(1));
    CHECK(equal(adjugate(I2), I2));
    ExactMatrix n(2, 2);
    n << CycScalar(0), CycScalar(1), CycScalar(0), CycScalar(0);
    CHECK(charpoly(n) == CPoly::monomial(CycScalar(1), 2));
    CHECK(rank(n) == 1);
    CHECK_THROWS_AS(det(ExactMatrix(2, 3)), ShapeError);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        for (int sz = 1; sz <= 6; ++sz) {
            auto a = rand_mat(rng, sz, t % 2 ? 3 : 0);
            auto ad = adjugate(a);
            CHECK(equal<CycScalar>(matmul<CycScalar>(a, ad), identity<CycScalar>(sz) * det(a)));
            auto cp = charpoly(a);
            ExactMatrix acc = zeros<CycScalar>(sz, sz), pw = identity<CycScalar>(sz);
            for (int k = 0; k <= cp.degree(); ++k) {
                acc += pw * cp.coeff(k);
                pw = matmul<CycScalar>(pw, a);
            }
            CHECK(is_zero(acc));
            CHECK(cp(CycScalar(0)) == (sz % 2 ? -det(a) : det(a)));
            auto ns = nullspace(a);
            CHECK(is_zero<CycScalar>(matmul<CycScalar>(a, ns)));
            CHECK(ns.cols() + rank(a) == sz);
            if (!det(a).is_zero()) {
                auto inv = inverse(a);
                REQUIRE(inv);
                CHECK(equal<CycScalar>(matmul<CycScalar>(a, *inv), identity<CycScalar>(sz)));
            }
        }
    }
    // pencil: adj(t - a) evaluated at t = 5 equals adjugate(5 - a)
    auto a = rand_mat(rng, 4);
    auto pencil = adjugate_pencil(a);
    ExactMatrix at = identity<CycScalar>(4) * CycScalar(5) - a, val = zeros<CycScalar>(4, 4);
    CycScalar pw(1);
    for (auto& aj : pencil) {
        val += aj * pw;
        pw *= CycScalar(5);
    }
    CHECK(equal(val, adjugate(at)));
    ExactMatrix b(2, 1);
    b << CycScalar(1), CycScalar(1);
    CHECK_FALSE(solve<CycScalar>(n, b).has_value());
}
