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
#include "kq/gaction.hpp"
#include "kq/ktheory.hpp"

using namespace kq;

namespace {

ExactMatrix mat(int r, int c, std::vector<long> v) {
    ExactMatrix a(r, c);
    for (int k = 0; k < r * c; ++k) a(k / c, k % c) = CycScalar(v[k]);
    return a;
}

QuiverPoint zero_point() {
    return QuiverPoint{int_context(1, {1}), 0, {1}, mat(1, 1, {0}), mat(1, 1, {0}), mat(1, 1, {1}), mat(1, 1, {1})};
}

CPoly mono(long c, int k) { return CPoly::monomial(CycScalar(c), k); }

std::vector<QuiverPoint> points(std::uint64_t seed, int count, int maxN) {
    std::mt19937_64 rng(seed);
    std::vector<QuiverPoint> out;
    std::uniform_int_distribution<int> dm(1, 3), dt(1, 5), dk(0, 2);
    int s = 0;
    while (static_cast<int>(out.size()) < count) {
        int m = dm(rng);
        std::vector<long> tau(m);
        for (auto& t : tau) t = dt(rng);
        auto ctx = int_context(m, tau);
        if (!is_generic(*ctx)) continue;
        int n = std::uniform_int_distribution<int>(0, m - 1)(rng);
        std::vector<int> dims(m);
        int N = 0;
        for (auto& k : dims) N += (k = dk(rng));
        if (N == 0 || N > maxN || cyclic_dimension(m, n, dims) < 0) continue;
        out.push_back(random_point(ctx, n, dims, ++s + 100 * seed));
    }
    return out;
}

// random valid word of up to `maxlen` moves for the cyclic group of order m;
// shears are c y^{m-1} (plus a quadratic term when m = 1) to keep degrees small
Automorphism random_sigma(std::mt19937_64& rng, int m, int maxlen = 3) {
    std::uniform_int_distribution<int> kind(0, 2), coef(-2, 2), len(1, maxlen);
    Automorphism s;
    const int L = len(rng);
    for (int t = 0; t < L; ++t) {
        int k = kind(rng);
        int c = coef(rng);
        if (c == 0) c = 3;
        if (k == 2) {
            s = compose(s, Automorphism::scale(CycScalar(c)));
            continue;
        }
        CPoly q = mono(c, m - 1);
        if (m == 1) q += mono(coef(rng), 2);
        s = compose(s, k == 0 ? Automorphism::shear_x(q) : Automorphism::shear_y(q));
    }
    return s;
}

}  // namespace

TEST_CASE("automorphism validation") {
    CHECK(validate_automorphism(Automorphism::shear_x(mono(1, 2)), 1).empty());
    CHECK(validate_automorphism(Automorphism::shear_x(mono(1, 2)), 3).empty());
    CHECK_FALSE(validate_automorphism(Automorphism::shear_x(mono(1, 1)), 3).empty());
    CHECK_FALSE(validate_automorphism(Automorphism::scale(CycScalar(0)), 2).empty());
    // x -> x + y^2 then y -> y + x^2
    auto s = compose(Automorphism::shear_x(mono(1, 2)), Automorphism::shear_y(mono(1, 2)));
    auto [ax, ay] = images(s);
    auto x = NCPoly::letter('x'), y = NCPoly::letter('y');
    CHECK(ax == x + y * y);
    CHECK(ay == y + (x + y * y) * (x + y * y));
    CHECK(validate_automorphism(s, 3).empty());
}

TEST_CASE("inverse") {
    std::mt19937_64 rng(61);
    auto x = NCPoly::letter('x'), y = NCPoly::letter('y');
    for (int m = 1; m <= 3; ++m)
        for (int t = 0; t < 10; ++t) {
            auto s = random_sigma(rng, m);
            CHECK(validate_automorphism(s, m).empty());
            auto [ax, ay] = images(compose(s, invert(s)));
            CHECK(ax == x);
            CHECK(ay == y);
            auto [bx, by] = images(compose(invert(s), s));
            CHECK(bx == x);
            CHECK(by == y);
        }
    auto inv = invert(Automorphism::scale(CycScalar(4)));
    CHECK(inv.moves.front().c == CycScalar(Rational(1, 4)));
}

TEST_CASE("apply is an algebra map") {
    std::mt19937_64 rng(67);
    for (int m = 1; m <= 3; ++m) {
        auto ctx = int_context(m, std::vector<long>(m, 2));
        auto s = random_sigma(rng, m);
        auto a = AlgElem::parse(ctx, "x*y + 2*y^2");
        auto b = AlgElem::parse(ctx, "x^2 - y");
        CHECK(apply(s, multiply(a, b)) == multiply(apply(s, a), apply(s, b)));
        CHECK(apply(invert(s), apply(s, a)) == a);
        // the defining relation is preserved
        auto sx = apply(s, AlgElem::x(ctx)), sy = apply(s, AlgElem::y(ctx));
        CHECK(multiply(sx, sy) - multiply(sy, sx) == AlgElem::tau(ctx));
        CHECK(apply(s, AlgElem::e(ctx, m - 1)) == AlgElem::e(ctx, m - 1));
    }
}

TEST_CASE("action on points") {
    auto p = zero_point();
    auto q = act_on_point(Automorphism::shear_y(mono(1, 1)), p);
    CHECK(equal(q.X, p.X));
    CHECK(equal(q.Y, p.Y));
    std::mt19937_64 rng(71);
    for (const auto& pt : points(73, 12, 4)) {
        const int m = pt.ctx->m();
        auto s1 = random_sigma(rng, m), s2 = random_sigma(rng, m);
        auto a = act_on_point(s1, pt);
        CHECK(validate_point(a).empty());
        CHECK(check_stability(a));
        CHECK(a.dims == pt.dims);
        CHECK(a.n == pt.n);
        // left action
        auto lhs = act_on_point(compose(s1, s2), pt);
        auto rhs = act_on_point(s1, act_on_point(s2, pt));
        CHECK(equal(lhs.X, rhs.X));
        CHECK(equal(lhs.Y, rhs.Y));
        auto id = act_on_point(Automorphism::identity(), pt);
        CHECK(equal(id.X, pt.X));
    }
}

TEST_CASE("equivariance") {
    CHECK(equivariance_check(Automorphism::shear_x(mono(1, 0)), zero_point()));
    auto ctx = int_context(3, {1, 2, 4});
    FractionalIdeal I(ctx, 2, {AlgElem::one(ctx)});
    auto J = act_on_ideal(Automorphism::shear_x(mono(1, 2)), I);
    CHECK(isomorphic_ideals(I, J));
    std::mt19937_64 rng(79);
    int wrong_direction_holds = 0, total = 0;
    for (const auto& pt : points(83, 12, 4)) {
        auto s = random_sigma(rng, pt.ctx->m(), 2);
        CAPTURE(s.str());
        CHECK(equivariance_check(s, pt));
        ++total;
        if (isomorphic_ideals(act_on_ideal(invert(s), build_ideal_My(pt)), build_ideal_My(act_on_point(s, pt))))
            ++wrong_direction_holds;
        CHECK(equivariance_check(Automorphism::identity(), pt));
        auto I2 = build_ideal_My(pt);
        CHECK(class_of_ideal(act_on_ideal(s, I2)) == class_of_ideal(I2));
    }
    CHECK(wrong_direction_holds < total);
}
