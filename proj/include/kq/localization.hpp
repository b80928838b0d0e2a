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
#pragma once

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kq/algebra.hpp"

namespace kq {

inline RatFunc sector_part(const RatFunc& f, int r, int m) { return sector_project(f, r, m); }
// Sector-pure multiple: lcm of f(zeta^j var) over j, monic.
CPoly sector_closure(const CPoly& f, int m);

/*
   e_n * sum_l f_l(x) y^l with coefficients C = CPoly (elements of e_n B) or
   C = RatFunc (elements of the localization at C[x] - 0).
*/
template <class C>
class Row {
  public:
    Row() = default;
    Row(Ctx ctx, int n);
    static Row unit(const Ctx& ctx, int n);
    static Row monomial(const Ctx& ctx, int n, const C& f, int l);

    const Ctx& ctx() const { return ctx_; }
    int n() const { return n_; }
    const std::vector<C>& parts() const { return p_; }
    C part(int l) const { return (l >= 0 && l < static_cast<int>(p_.size())) ? p_[l] : C(); }
    int deg_y() const { return static_cast<int>(p_.size()) - 1; }
    bool is_zero() const { return p_.empty(); }
    const C& lc() const { return p_.back(); }
    void set_part(int l, C f);
    void add_part(int l, const C& f);

    Row& operator+=(const Row& o);
    Row& operator-=(const Row& o);
    friend Row operator+(Row a, const Row& b) { return a += b; }
    friend Row operator-(Row a, const Row& b) { return a -= b; }
    Row operator-() const { return scaled(CycScalar(-1)); }
    Row scaled(const CycScalar& s) const;
    // f(x) * row, f sector-pure of sector r: the row index moves to n + r.
    Row left_mul_x_fn(const C& f) const;
    Row with_n(int n) const;

    Row right_mul_x() const;
    Row right_mul_y(int k = 1) const;
    Row right_mul_e(int i) const;
    Row right_mul_g(const GAlgElem& g) const;
    Row right_mul_poly_x(const CPoly& f) const;
    Row right_mul(const AlgElem& b) const;

    friend bool operator==(const Row& a, const Row& b) { return a.n_ == b.n_ && a.p_ == b.p_; }
    friend bool operator!=(const Row& a, const Row& b) { return !(a == b); }
    std::string str() const;

  private:
    Ctx ctx_;
    int n_ = 0;
    std::vector<C> p_;
    void trim();
};

using PolyRow = Row<CPoly>;
using LocElemX = Row<RatFunc>;

// rows <-> PBW elements; row_from_alg takes e_n * a
AlgElem row_to_alg(const PolyRow& r);
PolyRow row_from_alg(const AlgElem& a, int n);
LocElemX to_loc(const PolyRow& r);
// Polynomial row if every coefficient is a polynomial.
std::optional<PolyRow> to_poly_row(const LocElemX& r);
// right multiplication by a rational function of x
LocElemX right_mul_rat_x(const LocElemX& r, const RatFunc& f);
// q, rem with a = g * q + rem, deg_y rem < deg_y g; g must have lc 1 as rational function.
std::pair<LocElemX, LocElemX> right_divide(const LocElemX& a, const LocElemX& g);

// The algebra with x and y swapped: x' = y, y' = x, e'_i = e_{-i}.
AlgElem mirror_alg(const AlgElem& a);

// e_n * sum_k g_k(y) x^k, the mirror image of LocElemX.
class LocElemY {
  public:
    LocElemY() = default;
    LocElemY(Ctx ctx, int n) : ctx_(std::move(ctx)), n_(n) {}
    static LocElemY from_mirror(const LocElemX& r, const Ctx& ctx);
    LocElemX mirrored() const;

    const Ctx& ctx() const { return ctx_; }
    int n() const { return n_; }
    const std::vector<RatFunc>& parts() const { return p_; }
    RatFunc part(int k) const { return (k >= 0 && k < static_cast<int>(p_.size())) ? p_[k] : RatFunc(CycScalar(0), 'y'); }
    int deg_x() const { return static_cast<int>(p_.size()) - 1; }
    bool is_zero() const { return p_.empty(); }
    void set_part(int k, RatFunc g);

    LocElemY right_mul_x() const;
    LocElemY right_mul_y() const;
    LocElemY right_mul_e(int i) const;
    LocElemY operator+(const LocElemY& o) const;
    LocElemY operator-(const LocElemY& o) const;
    friend bool operator==(const LocElemY& a, const LocElemY& b) { return a.n_ == b.n_ && a.p_ == b.p_; }
    std::string str() const;

  private:
    Ctx ctx_;
    int n_ = 0;
    std::vector<RatFunc> p_;
};

/*
   e_n * sum c_{ab} u^a w^b with (u, w) = (x, y) for XY and (y, x) for YX;
   exponents of either sign. Right multiplication is implemented for YX.
*/
class LaurentElem {
  public:
    enum class Order { XY, YX };
    using Key = std::pair<int, int>;
    LaurentElem() = default;
    LaurentElem(Ctx ctx, int n, Order o) : ctx_(std::move(ctx)), n_(n), order_(o) {}

    const Ctx& ctx() const { return ctx_; }
    int n() const { return n_; }
    Order order() const { return order_; }
    const std::map<Key, CycScalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    CycScalar coeff(int a, int b) const;
    void add(int a, int b, const CycScalar& c);
    LaurentElem& operator+=(const LaurentElem& o);
    LaurentElem& operator-=(const LaurentElem& o);
    LaurentElem scaled(const CycScalar& s) const;
    // keep terms with both exponents >= -bound
    LaurentElem truncated(int bound) const;
    friend bool operator==(const LaurentElem& a, const LaurentElem& b) {
        return a.n_ == b.n_ && a.order_ == b.order_ && a.t_ == b.t_;
    }

    // YX only. Exponents below -bound are dropped; y^{-1} expands downward in x.
    LaurentElem right_mul_x(int k = 1) const;
    LaurentElem right_mul_y(int bound) const;
    LaurentElem right_mul_y_inv(int bound) const;
    LaurentElem right_mul_e(int i) const;
    std::string str() const;

  private:
    Ctx ctx_;
    int n_ = 0;
    Order order_ = Order::YX;
    std::map<Key, CycScalar> t_;
};

// x^q y = y x^q + S(c, q) x^{q-1} behind e_c; any integer q.
CycScalar commutation_scalar(const AlgebraContext& ctx, int c, int q);

/*
   e_n * Dl(y)^{-1} * sum_u y^u F_u(x): rational in y on the left, rational in x
   on the right. Dl is sector-pure; the index behind Dl^{-1} is n - sector(Dl).
*/
class MixedYX {
  public:
    MixedYX() = default;
    MixedYX(Ctx ctx, int n, CPoly dl);

    const Ctx& ctx() const { return ctx_; }
    int n() const { return n_; }
    const CPoly& left_den() const { return dl_; }
    const std::vector<RatFunc>& parts() const { return f_; }
    RatFunc part(int u) const { return (u >= 0 && u < static_cast<int>(f_.size())) ? f_[u] : RatFunc(); }
    void add_part(int u, const RatFunc& f);
    bool is_zero() const { return f_.empty(); }

    MixedYX right_mul_x() const;
    MixedYX right_mul_rat_x(const RatFunc& g) const;
    MixedYX right_mul_y() const;
    MixedYX right_mul_e(int i) const;
    MixedYX& operator+=(const MixedYX& o);
    friend bool operator==(const MixedYX& a, const MixedYX& b) {
        return a.n_ == b.n_ && a.dl_ == b.dl_ && a.f_ == b.f_;
    }
    // YX expansion at infinity, exponents >= -bound.
    LaurentElem expand(int bound) const;
    std::string str() const;

  private:
    Ctx ctx_;
    int n_ = 0;
    CPoly dl_;
    std::vector<RatFunc> f_;
    int inner_index() const;
    void trim();
};

// Rational derivation: F(x) y = y F(x) + D_c(F) behind e_c.
RatFunc derivation(const AlgebraContext& ctx, int c, const RatFunc& f);

// The six projections. Grave: left factor, acute: right factor.
enum class Rho { X, Y, XGrave, XAcute, YGrave, YAcute };
using Localized = std::variant<LocElemX, LocElemY, LaurentElem>;
Localized rho_project(const Localized& e, Rho which);

}  // namespace kq
