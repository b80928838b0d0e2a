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
#include "kq/kappa.hpp"

#include <algorithm>

namespace kq {

namespace {

struct Pencils {
    CPoly chix, chiy;
    std::vector<ExactMatrix> A, B;  // adj(x - X) = sum x^v A_v, adj(y - Y) = sum y^u B_u
};

Pencils pencils(const QuiverPoint& p) {
    return Pencils{charpoly(p.X), charpoly(p.Y), adjugate_pencil(p.X), adjugate_pencil(p.Y)};
}

CycScalar entry(const ExactMatrix& a) { return a(0, 0); }

// -j (X - x)^{-1} w = sum_v x^v j A_v w / chi_X(x)
RatFunc neg_jrx(const QuiverPoint& p, const Pencils& P, const ExactMatrix& w) {
    std::vector<CycScalar> c(P.A.size(), CycScalar(0));
    for (size_t v = 0; v < P.A.size(); ++v) c[v] = entry(matmul<CycScalar>(p.j, matmul<CycScalar>(P.A[v], w)));
    return RatFunc(CPoly(std::move(c)), P.chix, 'x');
}

void require_point(const QuiverPoint& p) {
    auto rep = validate_point(p);
    if (!rep.empty()) throw ValidationError(rep.front());
}

// Copy of a into an equal context object.
AlgElem rehome(const AlgElem& a, const Ctx& ctx) {
    AlgElem out(ctx);
    for (const auto& [key, g] : a.terms()) out.add_term(key.first, key.second, g);
    return out;
}

// sum over the parts of b of a * (part) y^l
MixedYX times_loc(const MixedYX& a, const LocElemX& b) {
    MixedYX out(a.ctx(), a.n(), a.left_den());
    for (int l = 0; l <= b.deg_y(); ++l) {
        if (b.parts()[l].is_zero()) continue;
        MixedYX t = a.right_mul_rat_x(b.parts()[l]);
        for (int s = 0; s < l; ++s) t = t.right_mul_y();
        out += t;
    }
    return out;
}

bool resolvent_identity(const QuiverPoint& p) {
    MixedYX prod = times_loc(kappa_resolvent(p), mu_times_chi_y(p));
    const CPoly chiy = charpoly(p.Y);
    const CPoly sq = chiy * chiy;
    MixedYX expect(p.ctx, p.n, chiy);
    for (int u = 0; u <= sq.degree(); ++u) expect.add_part(u, RatFunc(sq.coeff(u), 'x'));
    return prod == expect;
}

bool resolvent_support(const QuiverPoint& p) {
    MixedYX k = kappa_resolvent(p);
    for (int i = 0; i < p.ctx->m(); ++i) {
        MixedYX t = k.right_mul_e(i);
        if (p.ctx->mod(i) == p.ctx->mod(p.n) ? !(t == k) : !t.is_zero()) return false;
    }
    return true;
}

LaurentElem unit_laurent(const QuiverPoint& p, LaurentElem::Order o) {
    LaurentElem u(p.ctx, p.ctx->mod(p.n), o);
    u.add(0, 0, CycScalar(1));
    return u;
}

}  // namespace

KappaMu kappa(const QuiverPoint& p, int bound) {
    KappaMu k;
    k.kind = KappaMu::Kind::Kappa;
    k.point = p;
    LambdaTable lam = build_lambda(p, bound);
    k.bound = lam.bound;
    k.coeffs = lam.values;
    return k;
}

KappaMu mu(const QuiverPoint& p, int bound) {
    require_point(p);
    KappaMu k;
    k.kind = KappaMu::Kind::Mu;
    k.point = p;
    k.bound = bound < 0 ? default_lambda_bound(p.N()) : bound;
    if (p.N() == 0) return k;
    std::vector<ExactMatrix> yi{p.i};
    for (int l = 1; l <= k.bound; ++l) yi.push_back(matmul<CycScalar>(p.Y, yi.back()));
    ExactMatrix jx = p.j;
    for (int a = 0; a <= k.bound; ++a) {
        for (int l = 0; l <= k.bound; ++l) {
            CycScalar v = entry(matmul<CycScalar>(jx, yi[l]));
            if (!v.is_zero()) k.coeffs[{a, l}] = v;
        }
        jx = matmul<CycScalar>(jx, p.X);
    }
    return k;
}

MixedYX kappa_resolvent(const QuiverPoint& p) {
    require_point(p);
    Pencils P = pencils(p);
    MixedYX k(p.ctx, p.n, P.chiy);
    const int N = p.N();
    for (int u = 0; u <= N; ++u) {
        RatFunc f(P.chiy.coeff(u), 'x');
        if (u < N) {
            std::vector<CycScalar> c(N, CycScalar(0));
            ExactMatrix jb = matmul<CycScalar>(p.j, P.B[u]);
            for (int v = 0; v < N; ++v) c[v] = entry(matmul<CycScalar>(jb, matmul<CycScalar>(P.A[v], p.i)));
            f -= RatFunc(CPoly(std::move(c)), P.chix, 'x');
        }
        k.add_part(u, f);
    }
    return k;
}

LocElemX mu_times_chi_y(const QuiverPoint& p) {
    require_point(p);
    Pencils P = pencils(p);
    LocElemX out(p.ctx, p.n);
    const int N = p.N();
    for (int b = 0; b <= N; ++b) {
        RatFunc f(P.chiy.coeff(b), 'x');
        if (b < N) f += neg_jrx(p, P, matmul<CycScalar>(P.B[b], p.i));
        out.add_part(b, f);
    }
    return out;
}

LocElemY kappa_times_chi_x(const QuiverPoint& p) {
    require_point(p);
    Pencils P = pencils(p);
    LocElemY out(p.ctx, p.ctx->mod(p.n));
    const int N = p.N();
    for (int v = 0; v <= N; ++v) {
        RatFunc g(P.chix.coeff(v), 'y');
        if (v < N) {
            std::vector<CycScalar> c(N, CycScalar(0));
            ExactMatrix av = matmul<CycScalar>(P.A[v], p.i);
            for (int u = 0; u < N; ++u) c[u] = entry(matmul<CycScalar>(p.j, matmul<CycScalar>(P.B[u], av)));
            g -= RatFunc(CPoly(std::move(c)), P.chiy, 'y');
        }
        out.set_part(v, g);
    }
    return out;
}

LaurentElem kappa_series(const QuiverPoint& p, int order) {
    KappaMu k = kappa(p, order);
    LaurentElem s = unit_laurent(p, LaurentElem::Order::YX);
    for (const auto& [key, c] : k.coeffs) s.add(-key.second - 1, -key.first - 1, -c);
    return s;
}

LaurentElem mu_series(const QuiverPoint& p, int order) {
    KappaMu k = mu(p, order);
    LaurentElem s = unit_laurent(p, LaurentElem::Order::XY);
    for (const auto& [key, c] : k.coeffs) s.add(-key.first - 1, -key.second - 1, c);
    return s;
}

LaurentElem kappa_mu_series_product(const QuiverPoint& p, int K) {
    const LaurentElem kap = kappa_series(p, K).truncated(K);
    const KappaMu m = mu(p, K);
    LaurentElem out = kap;
    for (int k = 0; k < K; ++k) {
        int top = -1;
        for (int l = 0; l < K; ++l)
            if (m.coeffs.count({k, l})) top = l;
        if (top < 0) continue;
        LaurentElem z = kap.right_mul_x(-k - 1).truncated(K);
        if (z.is_zero()) continue;
        // z * sum_l c_l y^{-l-1} by Horner in y^{-1}
        LaurentElem acc = z.scaled(m.coeffs.at({k, top}));
        for (int l = top - 1; l >= 0; --l) {
            acc = acc.right_mul_y_inv(K);
            auto it = m.coeffs.find({k, l});
            if (it != m.coeffs.end()) acc += z.scaled(it->second);
        }
        out += acc.right_mul_y_inv(K);
    }
    return out.truncated(K);
}

ExactMatrix mirror_permutation(const QuiverPoint& p) {
    const int m = p.ctx->m(), N = p.N();
    ExactMatrix P = zeros<CycScalar>(N, N);
    int row = 0;
    for (int b = 0; b < m; ++b) {
        const int old = p.ctx->mod(-b);
        for (int t = 0; t < p.dims[old]; ++t) P(row++, p.offset(old) + t) = CycScalar(1);
    }
    return P;
}

QuiverPoint mirror_point(const QuiverPoint& p) {
    const int m = p.ctx->m();
    QuiverPoint q;
    q.ctx = p.ctx->mirror();
    q.n = p.ctx->mod(-p.n);
    q.dims.resize(m);
    for (int b = 0; b < m; ++b) q.dims[b] = p.dims[p.ctx->mod(-b)];
    ExactMatrix P = mirror_permutation(p);
    ExactMatrix Pt = P.transpose();
    q.X = matmul<CycScalar>(P, matmul<CycScalar>(p.Y, Pt));
    q.Y = matmul<CycScalar>(P, matmul<CycScalar>(p.X, Pt));
    q.i = matmul<CycScalar>(P, p.i);
    q.j = -matmul<CycScalar>(p.j, Pt);
    return q;
}

KappaMuReport check_kappa_mu(const QuiverPoint& p, int order) {
    require_point(p);
    if (order < 0) order = default_lambda_bound(p.N());
    const QuiverPoint q = mirror_point(p);
    KappaMuReport r;
    r.kappa_mu_resolvent = resolvent_identity(p);
    r.mu_kappa_resolvent = resolvent_identity(q);
    r.support = resolvent_support(p) && resolvent_support(q);
    r.kappa_mu_series = kappa_mu_series_product(p, order) == unit_laurent(p, LaurentElem::Order::YX);
    r.mu_kappa_series = kappa_mu_series_product(q, order) == unit_laurent(q, LaurentElem::Order::YX);
    r.series_matches_resolvent =
        kappa_resolvent(p).expand(order).truncated(order) == kappa_series(p, order).truncated(order) &&
        kappa_resolvent(q).expand(order).truncated(order) == kappa_series(q, order).truncated(order);
    return r;
}

// ------------------------------------------------------------------ Delta, f_2

LocElemX delta_x(const QuiverPoint& p, const ExactMatrix& v, int k, int l) {
    if (k < 0 || l < 0) throw BoundError("delta_x: negative exponent");
    Pencils P = pencils(p);
    LocElemX out(p.ctx, p.n);
    if (l == 0) return out;
    std::vector<ExactMatrix> w{matmul<CycScalar>(matpow<CycScalar>(p.X, k), v)};
    for (int t = 1; t < l; ++t) w.push_back(matmul<CycScalar>(p.Y, w.back()));
    for (int s = 0; s < l; ++s) out.add_part(s, neg_jrx(p, P, w[l - 1 - s]));
    return out;
}

LocElemY delta_y(const QuiverPoint& p, const ExactMatrix& v, int k, int l) {
    const QuiverPoint q = mirror_point(p);
    return LocElemY::from_mirror(delta_x(q, matmul<CycScalar>(mirror_permutation(p), v), k, l), p.ctx);
}

ExactMatrix act_on_vector(const QuiverPoint& p, const ExactMatrix& v, const AlgElem& b) {
    ExactMatrix out = zeros<CycScalar>(p.N(), 1);
    for (const auto& [key, g] : b.terms()) {
        ExactMatrix w = matmul<CycScalar>(matpow<CycScalar>(p.Y, key.second), matmul<CycScalar>(matpow<CycScalar>(p.X, key.first), v));
        for (int r = 0; r < p.N(); ++r) w(r, 0) *= g[p.block_of(r)];
        out += w;
    }
    return out;
}

LocElemX f2_x(const QuiverPoint& p, const ExactMatrix& v, const AlgElem& b) {
    LocElemX out(p.ctx, p.n);
    for (const auto& [key, g] : b.terms()) out += delta_x(p, v, key.first, key.second).right_mul_g(g);
    return out;
}

LocElemY f2_y(const QuiverPoint& p, const ExactMatrix& v, const AlgElem& b) {
    const QuiverPoint q = mirror_point(p);
    return LocElemY::from_mirror(f2_x(q, matmul<CycScalar>(mirror_permutation(p), v), mirror_alg(b)), p.ctx);
}

LocElemX f2_x_word(const QuiverPoint& p, const ExactMatrix& v, const std::vector<Letter>& word) {
    Pencils P = pencils(p);
    LocElemX acc(p.ctx, p.n);
    ExactMatrix cur = v;
    for (const Letter& a : word) {
        switch (a.kind) {
            case Letter::X:
                acc = acc.right_mul_x();
                cur = matmul<CycScalar>(p.X, cur);
                break;
            case Letter::Y:
                acc = acc.right_mul_y();
                acc.add_part(0, neg_jrx(p, P, cur));
                cur = matmul<CycScalar>(p.Y, cur);
                break;
            case Letter::E:
                acc = acc.right_mul_e(a.idx);
                cur = matmul<CycScalar>(p.projector(p.ctx->mod(a.idx)), cur);
                break;
        }
    }
    return acc;
}

LocElemX cocycle_defect_x(const QuiverPoint& p, const ExactMatrix& v, const AlgElem& a, const AlgElem& b) {
    return f2_x(p, v, multiply(a, b)) - f2_x(p, v, a).right_mul(b) - f2_x(p, act_on_vector(p, v, a), b);
}

LocElemY cocycle_defect_y(const QuiverPoint& p, const ExactMatrix& v, const AlgElem& a, const AlgElem& b) {
    const QuiverPoint q = mirror_point(p);
    ExactMatrix w = matmul<CycScalar>(mirror_permutation(p), v);
    return LocElemY::from_mirror(cocycle_defect_x(q, w, mirror_alg(a), mirror_alg(b)), p.ctx);
}

std::optional<PolyRow> basepoint_part(const QuiverPoint& p, const LocElemX& d) {
    PolyRow c(p.ctx, d.n());
    for (int l = 0; l <= d.deg_y(); ++l) c.set_part(l, poly_part(d.parts()[l]).first);
    if (!(d == to_loc(c) + f2_x(p, p.i, row_to_alg(c)))) return std::nullopt;
    return c;
}

std::optional<PolyRow> basepoint_part_y(const QuiverPoint& p, const LocElemY& d) {
    return basepoint_part(mirror_point(p), d.mirrored());
}

// ------------------------------------------------------------------ phi

AlgElem phi_apply(const AlgElem& b, const KappaMu& k) {
    if (k.kind != KappaMu::Kind::Kappa) throw ContextError("phi_apply needs kappa");
    const QuiverPoint& p = k.point;
    const Ctx& ctx = p.ctx;
    const int n = ctx->mod(p.n);
    PolyRow row = row_from_alg(rehome(b, ctx), n);
    int amax = 0;
    for (const auto& f : row.parts()) amax = std::max(amax, f.degree());
    const int need = std::max(amax, row.deg_y());
    std::map<std::pair<int, int>, CycScalar> lam = k.coeffs;
    if (k.bound < need) lam = build_lambda(p, need).values;

    std::map<std::pair<int, int>, AlgElem> pbw;  // e_n y^p x^q in PBW form
    auto to_pbw = [&](int py, int qx) -> const AlgElem& {
        auto it = pbw.find({py, qx});
        if (it == pbw.end()) {
            PolyRow r = PolyRow::monomial(ctx, n, CPoly(CycScalar(1)), py).right_mul_poly_x(CPoly::monomial(CycScalar(1), qx));
            it = pbw.emplace(std::make_pair(py, qx), row_to_alg(r)).first;
        }
        return it->second;
    };

    AlgElem out(ctx);
    for (int c = 0; c <= row.deg_y(); ++c) {
        const CPoly& f = row.parts()[c];
        for (int a = 0; a <= f.degree(); ++a) {
            if (f.coeff(a).is_zero()) continue;
            const int bound = a + c + 1;
            // e_n x^a y^c in YX order
            LaurentElem mono(ctx, n, LaurentElem::Order::YX);
            mono.add(0, a, CycScalar(1));
            for (int s = 0; s < c; ++s) mono = mono.right_mul_y(bound);
            // only lambda_{kl} with k < a, l < c survive both projections
            LaurentElem kt(ctx, n, LaurentElem::Order::YX);
            kt.add(0, 0, CycScalar(1));
            for (const auto& [key, v] : lam)
                if (key.first < a && key.second < c) kt.add(-key.second - 1, -key.first - 1, -v);
            LaurentElem prod(ctx, n, LaurentElem::Order::YX);
            for (const auto& [key, d] : mono.terms()) {
                LaurentElem t = kt;
                for (int s = 0; s < key.first; ++s) t = t.right_mul_y(bound);
                prod += t.right_mul_x(key.second).scaled(d);
            }
            for (const auto& [key, d] : prod.terms())
                if (key.first >= 0 && key.second >= 0) out += to_pbw(key.first, key.second).scaled(d * f.coeff(a));
        }
    }
    return out;
}

AlgElem phi_inverse(const AlgElem& b, const KappaMu& m) {
    if (m.kind != KappaMu::Kind::Mu) throw ContextError("phi_inverse needs mu");
    const QuiverPoint q = mirror_point(m.point);
    KappaMu k = kappa(q, m.bound);
    AlgElem img = phi_apply(mirror_alg(rehome(b, m.point.ctx)), k);
    return rehome(mirror_alg(img), m.point.ctx);
}

}  // namespace kq
