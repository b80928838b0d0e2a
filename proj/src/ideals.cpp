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
#include "kq/ideals.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <tuple>

namespace kq {

namespace {

CPoly one_poly() { return CPoly(CycScalar(1)); }
CPoly x_power(int a) { return CPoly::monomial(CycScalar(1), a); }

// g = u a + v b with g monic
std::tuple<CPoly, CPoly, CPoly> xgcd(const CPoly& a, const CPoly& b) {
    CPoly r0 = a, r1 = b, u0 = one_poly(), u1, v0, v1 = one_poly();
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = r1;
        r1 = r;
        CPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    CycScalar s = r0.lc().inv();
    return {r0 * CPoly(s), u0 * CPoly(s), v0 * CPoly(s)};
}

int sector_or_throw(const CPoly& p, int m, const char* what) {
    auto s = poly_sector(p, m);
    if (!s) throw NotInFamilyError(std::string("audit: ") + what + " mixes sectors");
    return *s;
}

CPoly common_denominator(const std::vector<RatFunc>& fs) {
    CPoly L = one_poly();
    for (const auto& f : fs) L = lcm(L, f.den());
    return L.monic();
}

// e_n c(y) * (sum_v G_v(y) x^v) as a PBW row in e_{n - sector(c)}
PolyRow clear_y(const LocElemY& g, const CPoly& c, int a) {
    const Ctx& ctx = g.ctx();
    AlgElem out(ctx);
    for (int v = 0; v <= g.deg_x(); ++v) {
        RatFunc cg = RatFunc(c, 'y') * g.parts()[v];
        if (!cg.is_poly()) throw Error("Internal", "clear_y: denominator survived");
        CPoly num = cg.num() * CPoly(cg.den().lc().inv());
        out += multiply(poly_in_y(ctx, num), AlgElem::monomial(ctx, v, 0));
    }
    return row_from_alg(out, a);
}

struct Cleared {
    int n;
    std::vector<PolyRow> rows;
};

Cleared clear_generators(const FractionalIdeal& I) {
    const Ctx& ctx = I.ctx();
    const int m = ctx->m();
    const int n = ctx->mod(I.n());
    bool locx = false, locy = false;
    std::vector<RatFunc> dens_x, dens_y;
    for (const auto& g : I.gens()) {
        if (auto* r = std::get_if<LocElemX>(&g)) {
            if (ctx->mod(r->n()) != n) throw ContextError("generator index differs from the ideal's");
            for (const auto& f : r->parts())
                if (!f.is_poly()) locx = true, dens_x.push_back(f);
        } else if (auto* r = std::get_if<LocElemY>(&g)) {
            if (ctx->mod(r->n()) != n) throw ContextError("generator index differs from the ideal's");
            for (const auto& f : r->parts())
                if (!f.is_poly()) locy = true, dens_y.push_back(f);
        }
    }
    if (locx && locy) throw NotInFamilyError("generators mix x- and y-localized forms");
    Cleared out{n, {}};
    if (locy) {
        CPoly c = sector_closure(common_denominator(dens_y), m);
        out.n = ctx->mod(n - sector_or_throw(c, m, "y-denominator"));
        for (const auto& g : I.gens()) {
            if (auto* r = std::get_if<LocElemY>(&g)) {
                out.rows.push_back(clear_y(*r, c, out.n));
            } else if (auto* r = std::get_if<LocElemX>(&g)) {
                auto pr = to_poly_row(*r);
                AlgElem a = row_to_alg(*pr);
                out.rows.push_back(row_from_alg(multiply(poly_in_y(ctx, c), a), out.n));
            } else {
                AlgElem a = std::get<AlgElem>(g).left_mul_e(n);
                out.rows.push_back(row_from_alg(multiply(poly_in_y(ctx, c), a), out.n));
            }
        }
        return out;
    }
    CPoly c = locx ? sector_closure(common_denominator(dens_x), m) : one_poly();
    out.n = ctx->mod(n + sector_or_throw(c, m, "x-denominator"));
    for (const auto& g : I.gens()) {
        LocElemX r;
        if (auto* a = std::get_if<LocElemX>(&g)) r = *a;
        else if (auto* b = std::get_if<LocElemY>(&g)) r = to_loc(clear_y(*b, one_poly(), n));
        else r = to_loc(row_from_alg(std::get<AlgElem>(g), n));
        auto pr = to_poly_row(r.left_mul_x_fn(RatFunc(c, 'x')));
        if (!pr) throw Error("Internal", "clearing x-denominators failed");
        out.rows.push_back(*pr);
    }
    return out;
}

}  // namespace

// ----------------------------------------------------------------- standard basis

namespace {

// y-graded completion over C[x]; slots below the lowest degree of the ideal stay empty
std::vector<std::optional<PolyRow>> complete(const Ctx& ctx, int n, const std::vector<PolyRow>& gens) {
    int D = -1;
    for (const auto& g : gens)
        if (!g.is_zero()) D = std::max(D, g.deg_y());
    if (D < 0) throw NotInFamilyError("zero ideal");
    const int m = ctx->m();
    std::vector<std::optional<PolyRow>> h(D + 1);
    std::deque<PolyRow> queue;
    for (const auto& g : gens) queue.push_back(g.with_n(n));

    auto push_products = [&](int d) {
        if (d < D) queue.push_back(h[d]->right_mul_y());
        for (int i = 0; i < m; ++i) queue.push_back(h[d]->right_mul_e(i));
    };
    while (!queue.empty()) {
        PolyRow f = std::move(queue.front());
        queue.pop_front();
        while (!f.is_zero()) {
            const int d = f.deg_y();
            if (d > D) throw Error("Internal", "standard_basis: degree above the generators");
            if (!h[d]) {
                h[d] = f.scaled(f.lc().lc().inv());
                push_products(d);
                break;
            }
            const CPoly& qd = h[d]->lc();
            auto [quo, rem] = divmod(f.lc(), qd);
            if (rem.is_zero()) {
                f -= h[d]->right_mul_poly_x(quo);
                continue;
            }
            auto [g, u, v] = xgcd(qd, f.lc());
            PolyRow nh = h[d]->right_mul_poly_x(u) + f.right_mul_poly_x(v);
            queue.push_back(*h[d]);
            queue.push_back(f);
            h[d] = nh;
            push_products(d);
            break;
        }
    }
    return h;
}

}  // namespace

StandardBasis standard_basis(const Ctx& ctx, int n, const std::vector<PolyRow>& gens) {
    auto h = complete(ctx, n, gens);
    const int D = static_cast<int>(h.size()) - 1;
    StandardBasis sb;
    sb.ctx = ctx;
    sb.n = ctx->mod(n);
    for (int d = 0; d <= D; ++d) {
        if (!h[d]) throw NotInFamilyError("ideal meets C[x] trivially");
        sb.q.push_back(h[d]->lc());
        sb.h.push_back(*h[d]);
    }
    return sb;
}

PolyRow reduce(const StandardBasis& sb, const PolyRow& f0) {
    PolyRow f = f0.with_n(sb.n), out(sb.ctx, sb.n);
    const int D = sb.D();
    while (!f.is_zero()) {
        const int d = f.deg_y();
        const int k = std::min(d, D);
        PolyRow hd = d > D ? sb.h[D].right_mul_y(d - D) : sb.h[d];
        auto [quo, rem] = divmod(f.lc(), sb.q[k]);
        if (!quo.is_zero()) f -= hd.right_mul_poly_x(quo);
        if (f.deg_y() == d) {
            out.set_part(d, f.lc());
            f.set_part(d, CPoly());
        }
    }
    return out;
}

// ----------------------------------------------------------------- Normalization

Normalization::Normalization(StandardBasis sb, std::vector<PolyRow> honest) : sb_(std::move(sb)), honest_(std::move(honest)) {
    const Ctx& ctx = sb_.ctx;
    const int m = ctx->m();
    p_ = sb_.q.back();
    n_ = ctx->mod(sb_.n - sector_or_throw(p_, m, "stable ladder polynomial"));
    for (const auto& q : sb_.q) {
        auto [a, r] = divmod(q, p_);
        if (!r.is_zero()) throw Error("Internal", "ladder is not a divisor chain");
        ladder_.push_back(a.monic());
    }
    for (int d = 0; d < static_cast<int>(ladder_.size()); ++d)
        for (int k = 0; k < ladder_[d].degree(); ++k) mono_.push_back({k, d});
    std::stable_sort(mono_.begin(), mono_.end(), [&](const auto& a, const auto& b) {
        int ga = grade(a.first, a.second), gb = grade(b.first, b.second);
        return std::tie(ga, a.second, a.first) < std::tie(gb, b.second, b.first);
    });
    for (int t = 0; t < static_cast<int>(mono_.size()); ++t) index_[mono_[t]] = t;
}

int Normalization::grade(int k, int d) const { return sb_.ctx->mod(n_ - k + d); }

std::vector<int> Normalization::grade_dims() const {
    std::vector<int> v(sb_.ctx->m(), 0);
    for (const auto& [k, d] : mono_) ++v[grade(k, d)];
    return v;
}

GradedLadder Normalization::ladder() const {
    GradedLadder g;
    g.n = n_;
    g.chain = ladder_;
    g.stab_index = static_cast<int>(ladder_.size()) - 1;
    while (g.stab_index > 0 && ladder_[g.stab_index - 1] == ladder_.back()) --g.stab_index;
    return g;
}

const PolyRow& Normalization::kernel_element(int d, int a) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = psi_.find({d, a});
    if (it != psi_.end()) return it->second;
    // raw h_d x^a, built incrementally in a
    std::function<const PolyRow&(int, int)> raw = [&](int dd, int aa) -> const PolyRow& {
        auto r = raw_.find({dd, aa});
        if (r != raw_.end()) return r->second;
        PolyRow v;
        if (aa > 0) v = raw(dd, aa - 1).right_mul_x();
        else if (dd > sb_.D()) v = sb_.h[sb_.D()].right_mul_y(dd - sb_.D());
        else v = sb_.h[dd];
        return raw_.emplace(std::make_pair(dd, aa), std::move(v)).first->second;
    };
    const PolyRow& z = raw(d, a);
    PolyRow out(sb_.ctx, n_);
    for (int l = 0; l <= z.deg_y(); ++l) out.set_part(l, divmod(z.parts()[l], p_).first);
    return psi_.emplace(std::make_pair(d, a), std::move(out)).first->second;
}

ExactMatrix Normalization::coords(const PolyRow& f0) const {
    PolyRow f = f0.with_n(n_);
    const int D = static_cast<int>(ladder_.size()) - 1;
    for (int d = f.deg_y(); d >= 0; --d) {
        const int cut = d > D ? 0 : ladder_[d].degree();
        for (;;) {
            CPoly c = f.part(d);
            if (c.is_zero() || c.degree() < cut) break;
            const int k = c.degree();
            f -= kernel_element(d, k - cut).scaled(c.lc());
            if (f.part(d).degree() >= k) throw Error("Internal", "normal form: no progress");
        }
    }
    ExactMatrix v = zeros<CycScalar>(N(), 1);
    for (int l = 0; l <= f.deg_y(); ++l) {
        const CPoly& c = f.parts()[l];
        for (int k = 0; k <= c.degree(); ++k) {
            if (c.coeff(k).is_zero()) continue;
            auto it = index_.find({k, l});
            if (it == index_.end()) throw Error("Internal", "normal form left a non-standard monomial");
            v(it->second, 0) = c.coeff(k);
        }
    }
    return v;
}

bool Normalization::in_kernel(const PolyRow& f) const { return is_zero(coords(f)); }

// ----------------------------------------------------------------- theta solve

namespace {

QuiverPoint solve_theta(const Normalization& nz, const Ctx& ctx) {
    const int N = nz.N(), n = nz.n();
    QuiverPoint pt;
    pt.ctx = ctx;
    pt.n = n;
    pt.dims = nz.grade_dims();
    if (N == 0) {
        pt.X = pt.Y = ExactMatrix(0, 0);
        pt.i = ExactMatrix(0, 1);
        pt.j = ExactMatrix(1, 0);
        return pt;
    }
    const auto& mono = nz.standard_monomials();
    int W = 0;
    for (const auto& [k, d] : mono) W = std::max({W, k, d});
    W += 3;
    const int Wcheck = W + 2;

    std::map<std::pair<int, int>, ExactMatrix> nf;
    auto coords_of = [&](int k, int l) -> const ExactMatrix& {
        auto it = nf.find({k, l});
        if (it == nf.end())
            it = nf.emplace(std::make_pair(k, l), nz.coords(PolyRow::monomial(ctx, n, x_power(k), l))).first;
        return it->second;
    };
    // coords(X_lambda(x^k y^l)) = base + sum_u j_u lin[u]
    struct Affine {
        ExactMatrix base;
        std::vector<ExactMatrix> lin;
    };
    auto x_lambda = [&](int k, int l) {
        Affine a;
        a.base = nz.coords(PolyRow::monomial(ctx, n, x_power(k), l).right_mul_x());
        a.lin.assign(N, zeros<CycScalar>(N, 1));
        for (int t = 0; t < l; ++t) {
            const ExactMatrix& c = coords_of(k, t);
            const ExactMatrix& w = coords_of(0, l - 1 - t);
            for (int u = 0; u < N; ++u)
                if (!c(u, 0).is_zero()) a.lin[u] += w * c(u, 0);
        }
        return a;
    };
    // X = X0 + sum_u j_u X1[u], column s from the standard monomial s
    ExactMatrix X0 = zeros<CycScalar>(N, N);
    std::vector<ExactMatrix> X1(N, zeros<CycScalar>(N, N));
    for (int s = 0; s < N; ++s) {
        Affine a = x_lambda(mono[s].first, mono[s].second);
        X0.col(s) = a.base.col(0);
        for (int u = 0; u < N; ++u) X1[u].col(s) = a.lin[u].col(0);
    }
    ExactMatrix Y = zeros<CycScalar>(N, N);
    for (int s = 0; s < N; ++s) Y.col(s) = coords_of(mono[s].first, mono[s].second + 1).col(0);
    const ExactMatrix ivec = coords_of(0, 0);
    ExactMatrix T = zeros<CycScalar>(N, N);
    for (int s = 0; s < N; ++s) T(s, s) = ctx->tau_at(nz.grade(mono[s].first, mono[s].second));

    // rows of [A | b] with A j = b
    std::vector<std::vector<CycScalar>> rowsA;
    std::vector<CycScalar> rowsb;
    auto add_vec_eq = [&](const ExactMatrix& base, const std::vector<ExactMatrix>& lin) {
        for (int r = 0; r < base.rows(); ++r) {
            std::vector<CycScalar> row(N);
            bool any = !base(r, 0).is_zero();
            for (int u = 0; u < N; ++u) {
                row[u] = lin[u](r, 0);
                any = any || !row[u].is_zero();
            }
            if (!any) continue;
            rowsA.push_back(std::move(row));
            rowsb.push_back(-base(r, 0));
        }
    };
    auto invariance = [&](int k, int l) {
        Affine a = x_lambda(k, l);
        const ExactMatrix& c = coords_of(k, l);
        ExactMatrix base = a.base - matmul<CycScalar>(X0, c);
        std::vector<ExactMatrix> lin(N);
        for (int u = 0; u < N; ++u) lin[u] = a.lin[u] - matmul<CycScalar>(X1[u], c);
        add_vec_eq(base, lin);
    };
    for (int k = 0; k <= W; ++k)
        for (int l = 0; l <= W; ++l) invariance(k, l);
    // moment map, column by column
    {
        ExactMatrix base = matmul<CycScalar>(X0, Y) - matmul<CycScalar>(Y, X0) + T;
        std::vector<ExactMatrix> lin(N);
        for (int u = 0; u < N; ++u) lin[u] = matmul<CycScalar>(X1[u], Y) - matmul<CycScalar>(Y, X1[u]);
        for (int col = 0; col < N; ++col) {
            std::vector<ExactMatrix> lc(N);
            for (int u = 0; u < N; ++u) {
                lc[u] = lin[u].col(col);
                if (u == col) lc[u] -= ivec;
            }
            add_vec_eq(base.col(col), lc);
        }
    }
    // j vanishes off the grade-n block
    for (int u = 0; u < N; ++u) {
        if (nz.grade(mono[u].first, mono[u].second) == ctx->mod(n)) continue;
        std::vector<CycScalar> row(N, CycScalar(0));
        row[u] = CycScalar(1);
        rowsA.push_back(std::move(row));
        rowsb.push_back(CycScalar(0));
    }
    ExactMatrix A(static_cast<Eigen::Index>(rowsA.size()), N), b(static_cast<Eigen::Index>(rowsA.size()), 1);
    for (size_t r = 0; r < rowsA.size(); ++r) {
        for (int u = 0; u < N; ++u) A(r, u) = rowsA[r][u];
        b(r, 0) = rowsb[r];
    }
    auto sol = solve<CycScalar>(A, b);
    if (!sol) throw NotInFamilyError("no point reproduces this ideal");
    if (rank(A) < N) throw WindowError("transition data not determined on the window");
    ExactMatrix j = sol->transpose();
    ExactMatrix X = X0;
    for (int u = 0; u < N; ++u) X += X1[u] * j(0, u);
    // stabilization guard: invariance on a wider window
    for (int k = 0; k <= Wcheck; ++k)
        for (int l = 0; l <= Wcheck; ++l) {
            if (k <= W && l <= W) continue;
            Affine a = x_lambda(k, l);
            ExactMatrix lhs = a.base;
            for (int u = 0; u < N; ++u) lhs += a.lin[u] * j(0, u);
            if (!equal(lhs, matmul<CycScalar>(X, coords_of(k, l))))
                throw WindowError("x-action on the quotient not stable beyond the window");
        }
    pt.X = X;
    pt.Y = Y;
    pt.i = ivec;
    pt.j = j;
    auto rep = validate_point(pt);
    if (!rep.empty()) throw NotInFamilyError("reconstructed point invalid: " + rep.front());
    if (!check_stability(pt)) throw NotInFamilyError("reconstructed point unstable");
    return pt;
}

}  // namespace

// ----------------------------------------------------------------- FractionalIdeal

struct FractionalIdeal::Cache {
    std::once_flag norm_once, theta_once;
    std::shared_ptr<Normalization> norm;
    std::exception_ptr norm_err;
    std::optional<QuiverPoint> theta;
    std::exception_ptr theta_err;
};

FractionalIdeal::FractionalIdeal(Ctx ctx, int n, std::vector<Gen> gens)
    : ctx_(std::move(ctx)), n_(ctx_->mod(n)), gens_(std::move(gens)), cache_(std::make_shared<Cache>()) {}

const Normalization& FractionalIdeal::normalization() const {
    if (!cache_) throw ContextError("empty ideal object");
    std::call_once(cache_->norm_once, [&] {
        try {
            Cleared c = clear_generators(*this);
            // I B_x is generated by the lowest element of a standard basis, made monic
            auto h = complete(ctx_, c.n, c.rows);
            size_t d0 = 0;
            while (!h[d0]) ++d0;
            LocElemX g = to_loc(*h[d0]);
            g = right_mul_rat_x(g, g.lc().inv());
            if (!(g.right_mul_e(ctx_->mod(g.n() + g.deg_y())) == g)) throw Error("Internal", "B_x generator is not homogeneous");
            std::vector<LocElemX> qs;
            std::vector<RatFunc> all;
            for (const auto& r : c.rows) {
                auto [q, rem] = right_divide(to_loc(r), g);
                if (!rem.is_zero()) throw Error("Internal", "generator not divisible by the right gcd");
                if (q.is_zero()) continue;
                qs.push_back(q);
                for (const auto& f : q.parts()) all.push_back(f);
            }
            const int m = ctx_->m();
            CPoly L = sector_closure(common_denominator(all), m);
            std::vector<PolyRow> honest;
            for (const auto& q : qs) {
                auto pr = to_poly_row(q.left_mul_x_fn(RatFunc(L, 'x')));
                if (!pr) throw Error("Internal", "clearing failed");
                honest.push_back(*pr);
            }
            const int b = honest.front().n();
            StandardBasis sb = standard_basis(ctx_, b, honest);
            cache_->norm = std::make_shared<Normalization>(std::move(sb), std::move(honest));
        } catch (...) {
            cache_->norm_err = std::current_exception();
        }
    });
    if (cache_->norm_err) std::rethrow_exception(cache_->norm_err);
    return *cache_->norm;
}

FractionalIdeal build_ideal_My(const QuiverPoint& p) {
    auto rep = validate_point(p);
    if (!rep.empty()) throw ValidationError(rep.front());
    if (!check_stability(p)) throw StabilityError("build_ideal: unstable point");
    std::vector<FractionalIdeal::Gen> gens{AlgElem(poly_in_y(p.ctx, charpoly(p.Y))), kappa_times_chi_x(p)};
    FractionalIdeal I(p.ctx, p.n, std::move(gens));
    if (!is_generic(*p.ctx)) I.warnings.push_back("GenericityWarning: tau is not generic");
    return I;
}

FractionalIdeal build_ideal_Mx(const QuiverPoint& p) {
    auto rep = validate_point(p);
    if (!rep.empty()) throw ValidationError(rep.front());
    if (!check_stability(p)) throw StabilityError("build_ideal: unstable point");
    std::vector<FractionalIdeal::Gen> gens{AlgElem(poly_in_x(p.ctx, charpoly(p.X))), mu_times_chi_y(p)};
    FractionalIdeal I(p.ctx, p.n, std::move(gens));
    if (!is_generic(*p.ctx)) I.warnings.push_back("GenericityWarning: tau is not generic");
    return I;
}

FractionalIdeal mirror_ideal(const FractionalIdeal& I) {
    Ctx mc = I.ctx()->mirror();
    std::vector<FractionalIdeal::Gen> gens;
    for (const auto& g : I.gens()) {
        if (auto* r = std::get_if<LocElemX>(&g)) gens.push_back(LocElemY::from_mirror(*r, mc));
        else if (auto* r = std::get_if<LocElemY>(&g)) gens.push_back(r->mirrored());
        else gens.push_back(mirror_alg(std::get<AlgElem>(g).left_mul_e(I.n())));
    }
    FractionalIdeal out(mc, -I.n(), std::move(gens));
    out.warnings = I.warnings;
    return out;
}

PolynomialGenerators polynomial_generators(const FractionalIdeal& I) {
    const auto& nz = I.normalization();
    PolynomialGenerators out;
    out.n = nz.basis().n;
    for (const auto& r : nz.honest_generators()) out.gens.push_back(row_to_alg(r));
    return out;
}

GradedLadder gr_y_ladder(const FractionalIdeal& I) { return I.normalization().ladder(); }

const QuiverPoint& FractionalIdeal::theta_point() const {
    const Normalization& nz = normalization();
    std::call_once(cache_->theta_once, [&] {
        try {
            cache_->theta = solve_theta(nz, ctx_);
        } catch (...) {
            cache_->theta_err = std::current_exception();
        }
    });
    if (cache_->theta_err) std::rethrow_exception(cache_->theta_err);
    return *cache_->theta;
}

QuiverPoint theta1(const FractionalIdeal& I) { return I.theta_point(); }

LambdaTable transition_lambda(const FractionalIdeal& I, int bound) {
    const auto& nz = I.normalization();
    const QuiverPoint& pt = I.theta_point();
    LambdaTable t;
    t.ctx = I.ctx();
    t.n = nz.n();
    t.bound = bound < 0 ? default_lambda_bound(nz.N()) : bound;
    t.source = LambdaTable::Source::Solved;
    if (nz.N() == 0) return t;
    for (int k = 0; k <= t.bound; ++k)
        for (int l = 0; l <= t.bound; ++l) {
            CycScalar v = matmul<CycScalar>(pt.j, nz.coords(PolyRow::monomial(I.ctx(), nz.n(), x_power(k), l)))(0, 0);
            if (!v.is_zero()) t.values[{k, l}] = v;
        }
    return t;
}

bool isomorphic_ideals(const FractionalIdeal& a, const FractionalIdeal& b) {
    if (!(*a.ctx() == *b.ctx())) return false;
    const auto &na = a.normalization(), &nb = b.normalization();
    if (na.n() != nb.n() || na.N() != nb.N()) return false;
    return transition_lambda(a) == transition_lambda(b);
}

std::vector<L0Element> kernel_window_x(const FractionalIdeal& I, int window) {
    if (window < 0) throw WindowError("negative window");
    const auto& nz = I.normalization();
    std::vector<std::pair<int, int>> keys;
    for (int k = 0; k <= window; ++k)
        for (int l = 0; l <= window; ++l) keys.push_back({k, l});
    ExactMatrix A = zeros<CycScalar>(nz.N(), static_cast<Eigen::Index>(keys.size()));
    for (size_t c = 0; c < keys.size(); ++c)
        A.col(c) = nz.coords(PolyRow::monomial(I.ctx(), nz.n(), x_power(keys[c].first), keys[c].second)).col(0);
    ExactMatrix ns = nullspace<CycScalar>(A);
    std::vector<L0Element> out;
    for (Eigen::Index c = 0; c < ns.cols(); ++c) {
        L0Element v;
        for (size_t r = 0; r < keys.size(); ++r)
            if (!ns(r, c).is_zero()) v.add(keys[r].first, keys[r].second, ns(r, c));
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<L0Element> kernel_window_y(const FractionalIdeal& I, int window) {
    return kernel_window_x(mirror_ideal(I), window);
}

}  // namespace kq
