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
#include "kq/dgmodel.hpp"

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

// Literal recursion: (k,0).x = (k+1,0); (k,l).x = ((k,l-1).x).y - tau_{n+l-1-k} (k,l-1) + lambda_{k,l-1} (0,0).
L0Element x_oracle(int k, int l, const LambdaTable& lam) {
    L0Element r;
    if (l == 0) {
        r.add(k + 1, 0, CycScalar(1));
        return r;
    }
    r = l0_act(x_oracle(k, l - 1, lam), Letter{Letter::Y, 0}, lam);
    r.add(k, l - 1, -lam.ctx->tau_at(lam.n + l - 1 - k));
    r.add(0, 0, lam.at(k, l - 1));
    return r;
}

struct Sample {
    Ctx ctx;
    int n;
    std::vector<int> dims;
};

// small strata with a nonempty stable locus
std::vector<Sample> samples(std::mt19937_64& rng, int count, int maxN) {
    std::vector<Sample> out;
    std::uniform_int_distribution<int> dm(1, 4), dt(1, 5);
    while (static_cast<int>(out.size()) < count) {
        int m = dm(rng);
        std::vector<long> tau(m);
        for (auto& t : tau) t = dt(rng);
        auto ctx = int_context(m, tau);
        if (!is_generic(*ctx)) continue;
        std::uniform_int_distribution<int> dn(0, m - 1), dk(0, 2);
        int n = dn(rng);
        std::vector<int> dims(m);
        int N = 0;
        for (auto& k : dims) N += (k = dk(rng));
        if (N > maxN || cyclic_dimension(m, n, dims) < 0) continue;
        out.push_back({ctx, n, dims});
    }
    return out;
}

}  // namespace

TEST_CASE("build_lambda examples") {
    auto lam = build_lambda(zero_point(), 6);
    CHECK(lam.at(0, 0) == CycScalar(1));
    CHECK(lam.values.size() == 1);
    QuiverPoint p{int_context(2, {5, 1}), 0, {1, 0}, mat(1, 1, {0}), mat(1, 1, {0}), mat(1, 1, {1}), mat(1, 1, {5})};
    auto l2 = build_lambda(p);
    CHECK(l2.at(0, 0) == CycScalar(5));
    CHECK(l2.values.size() == 1);
    auto q = random_point(int_context(3, {1, 2, 3}), 0, {2, 1, 1}, 4);
    CHECK(build_lambda(q).at(1, 2).is_zero());
    CHECK_THROWS_AS(lam.at(7, 0), BoundError);
    CHECK_THROWS_AS(build_lambda(QuiverPoint{int_context(1, {0}), 0, {1}, mat(1, 1, {0}), mat(1, 1, {0}), mat(1, 1, {0}),
                                             mat(1, 1, {0})}),
                    StabilityError);
}

TEST_CASE("lambda support and gauge invariance") {
    std::mt19937_64 rng(21);
    int seed = 0;
    for (auto& s : samples(rng, 100, 4)) {
        auto p = random_point(s.ctx, s.n, s.dims, ++seed);
        auto lam = build_lambda(p);
        for (const auto& [key, v] : lam.values) CHECK((key.first - key.second) % s.ctx->m() == 0);
        if (seed % 5 == 0) {
            ExactMatrix g = identity<CycScalar>(p.N());
            for (int r = 0; r + 1 < p.N(); ++r)
                if (p.block_of(r) == p.block_of(r + 1)) g(r, r + 1) = CycScalar(seed % 3 + 1);
            for (int r = 0; r < p.N(); ++r) g(r, r) = CycScalar(r + 2);
            CHECK(build_lambda(gauge_apply(p, g)) == lam);
        }
    }
}

TEST_CASE("l0_act against the literal recursion") {
    std::mt19937_64 rng(5);
    for (auto& s : samples(rng, 12, 3)) {
        auto lam = build_lambda(random_point(s.ctx, s.n, s.dims, 7), 12);
        for (int k = 0; k <= 5; ++k)
            for (int l = 0; l <= 6; ++l) CHECK(l0_act(L0Element::basis(k, l), Letter{Letter::X, 0}, lam) == x_oracle(k, l, lam));
    }
    auto lam = build_lambda(zero_point(), 6);
    CHECK(l0_act(L0Element::basis(0, 1), Letter{Letter::X, 0}, lam) == L0Element::basis(1, 1));
    CHECK(l0_act(L0Element::basis(3, 0), Letter{Letter::Y, 0}, lam) == L0Element::basis(3, 1));
    auto l3 = build_lambda(random_point(int_context(3, {1, 1, 1}), 1, {1, 1, 1}, 2));
    CHECK(l0_act(L0Element::basis(0, 0), Letter{Letter::E, 1}, l3) == L0Element::basis(0, 0));
    CHECK(l0_act(L0Element::basis(0, 0), Letter{Letter::E, 2}, l3).is_zero());
    // sum over idempotents is the identity
    auto v = L0Element::basis(2, 1) + L0Element::basis(1, 3).scaled(CycScalar(4));
    L0Element acc;
    for (int i = 0; i < 3; ++i) acc += l0_act(v, Letter{Letter::E, i}, l3);
    CHECK(acc == v);
    CHECK_THROWS_AS(l0_act(L0Element::basis(0, 9), Letter{Letter::X, 0}, lam), BoundError);
}

TEST_CASE("d_L and nu") {
    auto model = build_model(zero_point());
    CHECK(dL_apply(L0Element::basis(0, 0), model.point) == model.point.i);
    CHECK(is_zero(dL_apply(L0Element::basis(1, 1), model.point)));
    auto nu = nu_apply(model.point.i, model);
    CHECK(nu == L0Element::basis(0, 0));
    CHECK(nu_apply(zeros<CycScalar>(1, 1), model).is_zero());
    // tau = 0: j = 0 is forced at N = 1, so nu vanishes on L1
    QuiverPoint z{int_context(1, {0}), 0, {1}, mat(1, 1, {2}), mat(1, 1, {3}), mat(1, 1, {1}), mat(1, 1, {0})};
    REQUIRE(validate_point(z).empty());
    auto mz = build_model(z);
    CHECK(nu_apply(mat(1, 1, {5}), mz).is_zero());

    std::mt19937_64 rng(8);
    for (auto& s : samples(rng, 10, 4)) {
        auto m = build_model(random_point(s.ctx, s.n, s.dims, 3));
        for (int k = 0; k <= 5; ++k)
            for (int l = 0; l <= 5; ++l) {
                auto v = L0Element::basis(k, l);
                auto dv = dL_apply(v, m.point);
                CHECK(dL_apply(l0_act(v, Letter{Letter::X, 0}, m.lambda), m.point) == matmul<CycScalar>(m.point.X, dv));
                CHECK(dL_apply(l0_act(v, Letter{Letter::Y, 0}, m.lambda), m.point) == matmul<CycScalar>(m.point.Y, dv));
            }
    }
}

TEST_CASE("check_axioms") {
    std::mt19937_64 rng(9);
    for (auto& s : samples(rng, 15, 4)) {
        auto m = build_model(random_point(s.ctx, s.n, s.dims, 11));
        auto rep = check_axioms(m);
        CHECK(rep.empty());
        if (!rep.empty()) MESSAGE(rep.front());
    }
    auto m = build_model(zero_point());
    auto forged = m;
    forged.lambda.values[{0, 0}] = CycScalar(2);
    auto rep = check_axioms(forged);
    REQUIRE_FALSE(rep.empty());
    bool l1 = false;
    for (auto& r : rep) l1 = l1 || r.find("moment identity") != std::string::npos;
    CHECK(l1);
    auto noi = m;
    noi.point.i = mat(1, 1, {0});
    rep = check_axioms(noi);
    bool a22 = false;
    for (auto& r : rep) a22 = a22 || r.find("cyclicity") != std::string::npos;
    CHECK(a22);
    // non-generic tau only warns
    QuiverPoint ng{int_context(2, {1, -1}), 0, {1, 0}, mat(1, 1, {0}), mat(1, 1, {0}), mat(1, 1, {1}), mat(1, 1, {1})};
    auto rng2 = check_axioms(build_model(ng));
    REQUIRE(rng2.size() == 1);
    CHECK(rng2.front().rfind("warning:", 0) == 0);
}

TEST_CASE("H0 membership") {
    std::mt19937_64 rng(12);
    for (auto& s : samples(rng, 10, 4)) {
        auto m = build_model(random_point(s.ctx, s.n, s.dims, 13));
        auto cx = charpoly(m.point.X), cy = charpoly(m.point.Y);
        L0Element vx, vy;
        for (int k = 0; k <= cx.degree(); ++k) vx.add(k, 0, cx.coeff(k));
        for (int l = 0; l <= cy.degree(); ++l) vy.add(0, l, cy.coeff(l));
        CHECK(h0_membership(vx, m));
        CHECK(h0_membership(vy, m));
        if (m.point.N() > 0) CHECK_FALSE(h0_membership(L0Element::basis(0, 0), m));
    }
    auto z = build_model(zero_point());
    CHECK(h0_membership(L0Element::basis(1, 0), z));
    CHECK_THROWS_AS(h0_membership(L0Element::basis(40, 0), z), BoundError);
    // kernel window of the zero point: everything but (0,0)
    auto ker = kernel_window(z, 3);
    CHECK(ker.size() == 15);
    for (auto& v : ker) CHECK(v.coeff(0, 0).is_zero());
}

TEST_CASE("point_from_lambda recovers the gauge class") {
    auto z = point_from_lambda(build_lambda(zero_point()));
    CHECK(z.N() == 1);
    CHECK(gauge_equivalent(z, zero_point()));
    std::mt19937_64 rng(14);
    int seed = 100;
    for (auto& s : samples(rng, 25, 4)) {
        auto p = random_point(s.ctx, s.n, s.dims, ++seed);
        auto q = point_from_lambda(build_lambda(p));
        CHECK(q.dims == p.dims);
        REQUIRE(validate_point(q).empty());
        CHECK(gauge_equivalent(p, q).has_value());
        // equal tables from gauge-equivalent points give gauge-equivalent reconstructions
        ExactMatrix g = identity<CycScalar>(p.N()) * CycScalar(3);
        auto q2 = point_from_lambda(build_lambda(gauge_apply(p, g)));
        CHECK(gauge_equivalent(q, q2).has_value());
    }
    // empty stratum point
    QuiverPoint e{int_context(3, {1, 1, 1}), 2, {0, 0, 0}, ExactMatrix(0, 0), ExactMatrix(0, 0), ExactMatrix(0, 1), ExactMatrix(1, 0)};
    CHECK(point_from_lambda(build_lambda(e)).N() == 0);
    CHECK_THROWS_AS(point_from_lambda(build_lambda(zero_point(), 1)), BoundError);
}
