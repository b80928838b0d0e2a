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
#include "kq/localization.hpp"

#include <sstream>

namespace kq {

namespace {

bool is_zero_c(const CPoly& f) { return f.is_zero(); }
bool is_zero_c(const RatFunc& f) { return f.is_zero(); }
std::string str_c(const CPoly& f) { return poly_str(f, 'x'); }
std::string str_c(const RatFunc& f) { return f.str(); }

std::optional<int> sector_c(const CPoly& f, int m) { return poly_sector(f, m); }
std::optional<int> sector_c(const RatFunc& f, int m) { return sector_of(f, m); }

RatFunc poly_part_rf(const RatFunc& f) { return RatFunc(poly_part(f).first, f.var()); }

}  // namespace

CPoly sector_closure(const CPoly& f, int m) {
    if (f.is_zero()) throw DivisionByZero("sector closure of zero");
    CPoly acc = f.monic();
    for (int j = 1; j < m; ++j) acc = lcm(acc, f.scale_var(CycScalar::zeta(m, j)));
    return acc.monic();
}

// ------------------------------------------------------------------ Row<C>

template <class C>
Row<C>::Row(Ctx ctx, int n) : ctx_(std::move(ctx)), n_(ctx_->mod(n)) {}

template <class C>
Row<C> Row<C>::unit(const Ctx& ctx, int n) {
    return monomial(ctx, n, C(CycScalar(Rational(1), ctx->m())), 0);
}

template <class C>
Row<C> Row<C>::monomial(const Ctx& ctx, int n, const C& f, int l) {
    Row r(ctx, n);
    r.set_part(l, f);
    return r;
}

template <class C>
void Row<C>::trim() {
    while (!p_.empty() && is_zero_c(p_.back())) p_.pop_back();
}

template <class C>
void Row<C>::set_part(int l, C f) {
    if (l < 0) throw BoundError("row: negative y-degree");
    if (l >= static_cast<int>(p_.size())) {
        if (is_zero_c(f)) return;
        p_.resize(l + 1);
    }
    p_[l] = std::move(f);
    trim();
}

template <class C>
void Row<C>::add_part(int l, const C& f) {
    if (is_zero_c(f)) return;
    set_part(l, part(l) + f);
}

template <class C>
Row<C>& Row<C>::operator+=(const Row& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && !ctx_) *this = Row(o.ctx_, o.n_);
    if (o.n_ != n_) throw ContextError("row: adding rows with different idempotents");
    if (o.p_.size() > p_.size()) p_.resize(o.p_.size());
    for (size_t l = 0; l < o.p_.size(); ++l) p_[l] += o.p_[l];
    trim();
    return *this;
}

template <class C>
Row<C>& Row<C>::operator-=(const Row& o) {
    return *this += -o;
}

template <class C>
Row<C> Row<C>::scaled(const CycScalar& s) const {
    Row r(ctx_, n_);
    if (s.is_zero()) return r;
    for (const auto& f : p_) r.p_.push_back(f.scaled(s));
    return r;
}

template <class C>
Row<C> Row<C>::left_mul_x_fn(const C& f) const {
    auto s = sector_c(f, ctx_->m());
    if (!s) throw ContextError("left multiplication by a function mixing sectors");
    Row r(ctx_, n_ + *s);
    for (size_t l = 0; l < p_.size(); ++l) r.set_part(static_cast<int>(l), f * p_[l]);
    return r;
}

template <class C>
Row<C> Row<C>::with_n(int n) const {
    Row r = *this;
    r.n_ = ctx_->mod(n);
    return r;
}

template <class C>
Row<C> Row<C>::right_mul_x() const {
    const int m = ctx_->m();
    Row r(ctx_, n_);
    r.p_.resize(p_.size());
    for (size_t l = 0; l < p_.size(); ++l) r.p_[l] += p_[l].shifted(1);
    // e_n x^k y^l x = e_n x^{k+1} y^l - sigma(k mod m, l) e_n x^k y^{l-1}
    for (int l = 1; l < static_cast<int>(p_.size()); ++l) {
        if (is_zero_c(p_[l])) continue;
        for (int s = 0; s < m; ++s) {
            C fs = m == 1 ? p_[l] : sector_part(p_[l], s, m);
            if (is_zero_c(fs)) continue;
            CycScalar sig(Rational(0), m);
            for (int t = 0; t < l; ++t) sig += ctx_->tau_at(static_cast<long>(n_) - s + t);
            if (!sig.is_zero()) r.p_[l - 1] -= fs.scaled(sig);
        }
    }
    r.trim();
    return r;
}

template <class C>
Row<C> Row<C>::right_mul_y(int k) const {
    if (k < 0) throw BoundError("row: negative y power");
    Row r(ctx_, n_);
    if (is_zero()) return r;
    r.p_.assign(k, C());
    r.p_.insert(r.p_.end(), p_.begin(), p_.end());
    return r;
}

template <class C>
Row<C> Row<C>::right_mul_e(int i) const {
    const int m = ctx_->m();
    Row r(ctx_, n_);
    for (size_t l = 0; l < p_.size(); ++l)
        r.set_part(static_cast<int>(l), sector_part(p_[l], n_ + static_cast<int>(l) - i, m));
    return r;
}

template <class C>
Row<C> Row<C>::right_mul_g(const GAlgElem& g) const {
    const int m = ctx_->m();
    Row r(ctx_, n_);
    for (size_t l = 0; l < p_.size(); ++l) {
        C acc{};
        for (int s = 0; s < m; ++s) {
            const CycScalar& c = g[ctx_->mod(n_ + static_cast<long>(l) - s)];
            if (c.is_zero()) continue;
            C fs = m == 1 ? p_[l] : sector_part(p_[l], s, m);
            if (!is_zero_c(fs)) acc += fs.scaled(c);
        }
        r.set_part(static_cast<int>(l), acc);
    }
    return r;
}

template <class C>
Row<C> Row<C>::right_mul_poly_x(const CPoly& f) const {
    Row r(ctx_, n_);
    Row cur = *this;
    for (int k = 0; k <= f.degree(); ++k) {
        if (k > 0) cur = cur.right_mul_x();
        if (!f.coeff(k).is_zero()) r += cur.scaled(f.coeff(k));
    }
    return r;
}

template <class C>
Row<C> Row<C>::right_mul(const AlgElem& b) const {
    Row r(ctx_, n_);
    if (b.is_zero() || is_zero()) return r;
    std::vector<Row> xs{*this};
    for (int k = 1; k <= b.deg_x(); ++k) xs.push_back(xs.back().right_mul_x());
    for (const auto& [key, g] : b.terms()) r += xs[key.first].right_mul_y(key.second).right_mul_g(g);
    return r;
}

template <class C>
std::string Row<C>::str() const {
    std::ostringstream os;
    os << "e_" << n_ << "*(";
    bool first = true;
    for (size_t l = 0; l < p_.size(); ++l) {
        if (is_zero_c(p_[l])) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << str_c(p_[l]) << ")";
        if (l == 1) os << "*y";
        if (l > 1) os << "*y^" << l;
    }
    if (first) os << "0";
    os << ")";
    return os.str();
}

template class Row<CPoly>;
template class Row<RatFunc>;

AlgElem row_to_alg(const PolyRow& r) {
    AlgElem a(r.ctx());
    for (int l = 0; l <= r.deg_y(); ++l) {
        const CPoly& f = r.parts()[l];
        for (int k = 0; k <= f.degree(); ++k)
            if (!f.coeff(k).is_zero()) a += AlgElem::term(r.ctx(), f.coeff(k), k, l, r.ctx()->mod(r.n() - k + l));
    }
    return a;
}

PolyRow row_from_alg(const AlgElem& a, int n) {
    const Ctx& ctx = a.ctx();
    PolyRow r(ctx, n);
    AlgElem e = a.left_mul_e(ctx->mod(n));
    std::map<int, std::vector<CycScalar>> parts;
    for (const auto& [key, g] : e.terms()) {
        auto [k, l] = key;
        CycScalar c = g[ctx->mod(static_cast<long>(n) - k + l)];
        if (c.is_zero()) continue;
        auto& v = parts[l];
        if (static_cast<int>(v.size()) <= k) v.resize(k + 1);
        v[k] = c;
    }
    for (auto& [l, v] : parts) r.set_part(l, CPoly(v));
    return r;
}

LocElemX to_loc(const PolyRow& r) {
    LocElemX out(r.ctx(), r.n());
    for (int l = 0; l <= r.deg_y(); ++l) out.set_part(l, RatFunc(r.parts()[l], 'x'));
    return out;
}

std::optional<PolyRow> to_poly_row(const LocElemX& r) {
    PolyRow out(r.ctx(), r.n());
    for (int l = 0; l <= r.deg_y(); ++l) {
        const RatFunc& f = r.parts()[l];
        if (!f.is_poly()) return std::nullopt;
        out.set_part(l, f.num().scaled(f.den().lc().inv()));
    }
    return out;
}

LocElemX right_mul_rat_x(const LocElemX& r, const RatFunc& f) {
    if (f.is_zero() || r.is_zero()) return LocElemX(r.ctx(), r.n());
    LocElemX w = r.right_mul_poly_x(f.num());
    if (f.is_poly()) return w;
    // solve z * den = w, top y-degree first
    const CPoly& v = f.den();
    RatFunc vinv = RatFunc(CPoly(CycScalar(1)), v, 'x');
    LocElemX z(r.ctx(), r.n());
    while (!w.is_zero()) {
        int d = w.deg_y();
        auto t = LocElemX::monomial(r.ctx(), r.n(), w.lc() * vinv, d);
        w -= t.right_mul_poly_x(v);
        if (w.deg_y() >= d) throw Error("Internal", "right_mul_rat_x: no degree drop");
        z += t;
    }
    return z;
}

std::pair<LocElemX, LocElemX> right_divide(const LocElemX& a, const LocElemX& g) {
    if (g.is_zero()) throw DivisionByZero("right division by zero row");
    if (g.lc() != RatFunc(CycScalar(1))) throw ContextError("right division needs a divisor with leading coefficient 1");
    const int d = g.deg_y();
    LocElemX q(g.ctx(), g.n() + d), rem = a;
    while (!rem.is_zero() && rem.deg_y() >= d) {
        int k = rem.deg_y() - d;
        RatFunc alpha = rem.lc();
        LocElemX t = right_mul_rat_x(g, alpha).right_mul_y(k);
        int before = rem.deg_y();
        rem -= t;
        if (rem.deg_y() >= before) throw Error("Internal", "right_divide: no degree drop");
        q.add_part(k, alpha);
    }
    return {q, rem};
}

AlgElem mirror_alg(const AlgElem& a) {
    const Ctx& ctx = a.ctx();
    Ctx mc = ctx->mirror();
    const int m = ctx->m();
    AlgElem out(mc);
    std::map<std::pair<int, int>, AlgElem> cache;
    for (const auto& [key, g] : a.terms()) {
        auto [k, l] = key;
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, multiply(AlgElem::monomial(mc, 0, k), AlgElem::monomial(mc, l, 0))).first;
        GAlgElem gm(m);
        for (int j = 0; j < m; ++j) gm[j] = g[ctx->mod(-j)];
        out += it->second.right_mul_g(gm);
    }
    return out;
}

// ------------------------------------------------------------------ LocElemY

void LocElemY::set_part(int k, RatFunc g) {
    if (k < 0) throw BoundError("LocElemY: negative x-degree");
    g = g.with_var('y');
    if (k >= static_cast<int>(p_.size())) {
        if (g.is_zero()) return;
        p_.resize(k + 1, RatFunc(CycScalar(0), 'y'));
    }
    p_[k] = std::move(g);
    while (!p_.empty() && p_.back().is_zero()) p_.pop_back();
}

LocElemX LocElemY::mirrored() const {
    LocElemX r(ctx_->mirror(), -n_);
    for (size_t k = 0; k < p_.size(); ++k) r.set_part(static_cast<int>(k), p_[k].with_var('x'));
    return r;
}

LocElemY LocElemY::from_mirror(const LocElemX& r, const Ctx& ctx) {
    LocElemY out(ctx, ctx->mod(-r.n()));
    for (int l = 0; l <= r.deg_y(); ++l) out.set_part(l, r.parts()[l].with_var('y'));
    return out;
}

LocElemY LocElemY::right_mul_x() const { return from_mirror(mirrored().right_mul_y(), ctx_); }
LocElemY LocElemY::right_mul_y() const { return from_mirror(mirrored().right_mul_x(), ctx_); }
LocElemY LocElemY::right_mul_e(int i) const { return from_mirror(mirrored().right_mul_e(-i), ctx_); }
LocElemY LocElemY::operator+(const LocElemY& o) const { return from_mirror(mirrored() + o.mirrored(), ctx_ ? ctx_ : o.ctx_); }
LocElemY LocElemY::operator-(const LocElemY& o) const { return from_mirror(mirrored() - o.mirrored(), ctx_ ? ctx_ : o.ctx_); }

std::string LocElemY::str() const {
    std::ostringstream os;
    os << "e_" << n_ << "*(";
    bool first = true;
    for (size_t k = 0; k < p_.size(); ++k) {
        if (p_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << p_[k].str() << ")";
        if (k == 1) os << "*x";
        if (k > 1) os << "*x^" << k;
    }
    if (first) os << "0";
    os << ")";
    return os.str();
}

// ------------------------------------------------------------------ Laurent

CycScalar commutation_scalar(const AlgebraContext& ctx, int c, int q) {
    const int m = ctx.m();
    int r = ((q % m) + m) % m;
    CycScalar p(Rational(0), m);
    for (int t = 0; t < r; ++t) p += ctx.tau_at(static_cast<long>(c) - t);
    return p + ctx.tau_sum() * CycScalar(Rational((q - r) / m), m);
}

CycScalar LaurentElem::coeff(int a, int b) const {
    auto it = t_.find({a, b});
    return it == t_.end() ? CycScalar(0) : it->second;
}

void LaurentElem::add(int a, int b, const CycScalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(Key{a, b}, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

LaurentElem& LaurentElem::operator+=(const LaurentElem& o) {
    if (!ctx_) *this = LaurentElem(o.ctx_, o.n_, o.order_);
    if (o.order_ != order_ || o.n_ != n_) throw ContextError("Laurent elements of different shape");
    for (const auto& [k, c] : o.t_) add(k.first, k.second, c);
    return *this;
}

LaurentElem& LaurentElem::operator-=(const LaurentElem& o) { return *this += o.scaled(CycScalar(-1)); }

LaurentElem LaurentElem::scaled(const CycScalar& s) const {
    LaurentElem r(ctx_, n_, order_);
    if (s.is_zero()) return r;
    for (const auto& [k, c] : t_) r.t_.emplace(k, c * s);
    return r;
}

LaurentElem LaurentElem::truncated(int bound) const {
    LaurentElem r(ctx_, n_, order_);
    for (const auto& [k, c] : t_)
        if (k.first >= -bound && k.second >= -bound) r.t_.emplace(k, c);
    return r;
}

LaurentElem LaurentElem::right_mul_x(int k) const {
    if (order_ != Order::YX) throw WrongOrderingError("right multiplication needs YX order");
    LaurentElem r(ctx_, n_, order_);
    for (const auto& [key, c] : t_) r.t_.emplace(Key{key.first, key.second + k}, c);
    return r;
}

LaurentElem LaurentElem::right_mul_y(int bound) const {
    if (order_ != Order::YX) throw WrongOrderingError("right multiplication needs YX order");
    LaurentElem r(ctx_, n_, order_);
    for (const auto& [key, c] : t_) {
        auto [p, q] = key;
        r.add(p + 1, q, c);
        if (q - 1 >= -bound) r.add(p, q - 1, c * commutation_scalar(*ctx_, n_ + p, q));
    }
    return r;
}

LaurentElem LaurentElem::right_mul_y_inv(int bound) const {
    if (order_ != Order::YX) throw WrongOrderingError("right multiplication needs YX order");
    LaurentElem r(ctx_, n_, order_);
    for (const auto& [key, c0] : t_) {
        int p = key.first, q = key.second;
        CycScalar c = c0;
        // y^p x^q y^{-1} = y^{p-1} x^q - S(n+p-1, q) y^{p-1} x^{q-1} y^{-1}
        while (q >= -bound && p - 1 >= -bound && !c.is_zero()) {
            r.add(p - 1, q, c);
            c = -(c * commutation_scalar(*ctx_, n_ + p - 1, q));
            --p;
            --q;
        }
    }
    return r;
}

LaurentElem LaurentElem::right_mul_e(int i) const {
    LaurentElem r(ctx_, n_, order_);
    for (const auto& [key, c] : t_) {
        auto [a, b] = key;
        // YX: e_n y^a x^b = y^a x^b e_{n+a-b}; XY: e_n x^a y^b = x^a y^b e_{n-a+b}
        int idx = order_ == Order::YX ? n_ + a - b : n_ - a + b;
        if (ctx_->mod(idx) == ctx_->mod(i)) r.t_.emplace(key, c);
    }
    return r;
}

std::string LaurentElem::str() const {
    std::ostringstream os;
    const char u = order_ == Order::YX ? 'y' : 'x', w = order_ == Order::YX ? 'x' : 'y';
    os << "e_" << n_ << "*(";
    bool first = true;
    for (const auto& [k, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (k.first != 0) os << "*" << u << "^" << k.first;
        if (k.second != 0) os << "*" << w << "^" << k.second;
    }
    if (first) os << "0";
    os << ")";
    return os.str();
}

// ------------------------------------------------------------------ MixedYX

RatFunc derivation(const AlgebraContext& ctx, int c, const RatFunc& f) {
    const int m = ctx.m();
    RatFunc out(CycScalar(0), 'x');
    if (f.is_zero()) return out;
    CycScalar tm = ctx.tau_sum() * CycScalar(Rational(1, m), m);
    RatFunc xinv = RatFunc::monomial(CycScalar(1), -1, 'x');
    for (int r = 0; r < m; ++r) {
        RatFunc fr = m == 1 ? f : sector_project(f, r, m);
        if (fr.is_zero()) continue;
        CycScalar p(Rational(0), m);
        for (int t = 0; t < r; ++t) p += ctx.tau_at(static_cast<long>(c) - t);
        out += fr.derivative().scaled(tm) + (fr * xinv).scaled(p - tm * CycScalar(Rational(r), m));
    }
    return out;
}

MixedYX::MixedYX(Ctx ctx, int n, CPoly dl) : ctx_(std::move(ctx)), n_(ctx_->mod(n)), dl_(std::move(dl)) {
    if (dl_.is_zero()) throw DivisionByZero("MixedYX: zero left denominator");
    dl_ = dl_.monic();
    if (!poly_sector(dl_, ctx_->m())) throw ContextError("MixedYX: left denominator mixes sectors");
}

int MixedYX::inner_index() const { return ctx_->mod(n_ - *poly_sector(dl_, ctx_->m())); }

void MixedYX::trim() {
    while (!f_.empty() && f_.back().is_zero()) f_.pop_back();
}

void MixedYX::add_part(int u, const RatFunc& f) {
    if (f.is_zero()) return;
    if (u >= static_cast<int>(f_.size())) f_.resize(u + 1, RatFunc(CycScalar(0), 'x'));
    f_[u] += f;
    trim();
}

MixedYX& MixedYX::operator+=(const MixedYX& o) {
    if (o.n_ != n_ || o.dl_ != dl_) throw ContextError("MixedYX: different left data");
    for (size_t u = 0; u < o.f_.size(); ++u) add_part(static_cast<int>(u), o.f_[u]);
    return *this;
}

MixedYX MixedYX::right_mul_x() const {
    MixedYX r = *this;
    for (auto& f : r.f_) f = f.shifted(1);
    return r;
}

MixedYX MixedYX::right_mul_rat_x(const RatFunc& g) const {
    MixedYX r = *this;
    for (auto& f : r.f_) f *= g;
    r.trim();
    return r;
}

MixedYX MixedYX::right_mul_y() const {
    MixedYX r(ctx_, n_, dl_);
    const int c0 = inner_index();
    for (size_t u = 0; u < f_.size(); ++u) {
        if (f_[u].is_zero()) continue;
        r.add_part(static_cast<int>(u) + 1, f_[u]);
        r.add_part(static_cast<int>(u), derivation(*ctx_, c0 + static_cast<int>(u), f_[u]));
    }
    return r;
}

MixedYX MixedYX::right_mul_e(int i) const {
    MixedYX r(ctx_, n_, dl_);
    const int c0 = inner_index();
    for (size_t u = 0; u < f_.size(); ++u)
        r.add_part(static_cast<int>(u), sector_project(f_[u], c0 + static_cast<int>(u) - i, ctx_->m()));
    return r;
}

LaurentElem MixedYX::expand(int bound) const {
    LaurentElem out(ctx_, n_, LaurentElem::Order::YX);
    int umax = static_cast<int>(f_.size()) - 1;
    auto dinv = laurent_at_infinity(RatFunc(CPoly(CycScalar(1)), dl_, 'y'), -bound - umax);
    for (int u = 0; u <= umax; ++u) {
        if (f_[u].is_zero()) continue;
        auto fu = laurent_at_infinity(f_[u], -bound);
        for (const auto& [a, ca] : dinv) {
            int p = a + u;
            if (p < -bound) continue;
            for (const auto& [q, cq] : fu) out.add(p, q, ca * cq);
        }
    }
    return out;
}

std::string MixedYX::str() const {
    std::ostringstream os;
    os << "e_" << n_ << "*(" << poly_str(dl_, 'y') << ")^-1*(";
    bool first = true;
    for (size_t u = 0; u < f_.size(); ++u) {
        if (f_[u].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (u > 0) os << "y^" << u << "*";
        os << "(" << f_[u].str() << ")";
    }
    if (first) os << "0";
    os << ")";
    return os.str();
}

// ------------------------------------------------------------------ rho

Localized rho_project(const Localized& e, Rho which) {
    auto bad = [&]() -> Localized { throw WrongOrderingError("projection does not match the normal form of its input"); };
    auto keep = [](const LaurentElem& l, bool first) {
        LaurentElem r(l.ctx(), l.n(), l.order());
        for (const auto& [k, c] : l.terms())
            if ((first ? k.first : k.second) >= 0) r.add(k.first, k.second, c);
        return r;
    };
    using O = LaurentElem::Order;
    switch (which) {
        case Rho::X:
        case Rho::XGrave:
            if (auto* a = std::get_if<LocElemX>(&e)) {
                LocElemX r(a->ctx(), a->n());
                for (int l = 0; l <= a->deg_y(); ++l) r.set_part(l, poly_part_rf(a->parts()[l]));
                return r;
            }
            if (auto* l = std::get_if<LaurentElem>(&e); l && l->order() == O::XY) return keep(*l, true);
            return bad();
        case Rho::XAcute:
            if (auto* l = std::get_if<LaurentElem>(&e); l && l->order() == O::YX) return keep(*l, false);
            if (std::holds_alternative<LocElemY>(e)) return e;
            return bad();
        case Rho::Y:
        case Rho::YGrave:
            if (auto* a = std::get_if<LocElemY>(&e)) {
                LocElemY r(a->ctx(), a->n());
                for (int k = 0; k <= a->deg_x(); ++k) r.set_part(k, poly_part_rf(a->parts()[k]));
                return r;
            }
            if (auto* l = std::get_if<LaurentElem>(&e); l && l->order() == O::YX) return keep(*l, true);
            return bad();
        case Rho::YAcute:
            if (auto* l = std::get_if<LaurentElem>(&e); l && l->order() == O::XY) return keep(*l, false);
            if (std::holds_alternative<LocElemX>(e)) return e;
            return bad();
    }
    return bad();
}

}  // namespace kq
