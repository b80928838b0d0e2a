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
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kq/scalars.hpp"

namespace kq {

/*
   Cyclic group of order m acting on x, y; tau = sum tau_i e_i.
   Idempotent shift law: e_i x = x e_{i-1}, e_i y = y e_{i+1}.
*/
class AlgebraContext {
  public:
    AlgebraContext(int m, std::vector<CycScalar> tau, int genericity_bound = 16);

    int m() const { return m_; }
    int genericity_bound() const { return bound_; }
    const std::vector<CycScalar>& tau() const { return tau_; }
    const CycScalar& tau_at(long i) const { return tau_[mod(i)]; }
    int mod(long i) const { return static_cast<int>(((i % m_) + m_) % m_); }
    CycScalar tau_sum() const;
    CycScalar scalar(const Rational& q) const { return CycScalar(q, m_); }
    CycScalar zeta(long k = 1) const { return CycScalar::zeta(m_, k); }

    // tau'_j = -tau_{-j}: the context of the algebra with x and y swapped
    std::shared_ptr<const AlgebraContext> mirror() const;

    friend bool operator==(const AlgebraContext& a, const AlgebraContext& b) {
        return a.m_ == b.m_ && a.tau_ == b.tau_;
    }

  private:
    int m_;
    std::vector<CycScalar> tau_;
    int bound_;
};

using Ctx = std::shared_ptr<const AlgebraContext>;

Ctx make_context(int m, std::vector<CycScalar> tau, int genericity_bound = 16);
Ctx int_context(int m, const std::vector<long>& tau);
bool is_generic(const AlgebraContext& ctx);

// Element sum c_i e_i of the group algebra, in the idempotent basis.
class GAlgElem {
  public:
    GAlgElem() = default;
    explicit GAlgElem(int m) : c_(m, CycScalar(0)) {}
    explicit GAlgElem(std::vector<CycScalar> c) : c_(std::move(c)) {}
    static GAlgElem unit(int m, int i);
    static GAlgElem constant(int m, const CycScalar& c) { return GAlgElem(std::vector<CycScalar>(m, c)); }

    int m() const { return static_cast<int>(c_.size()); }
    const CycScalar& operator[](int i) const { return c_[i]; }
    CycScalar& operator[](int i) { return c_[i]; }
    bool is_zero() const;
    GAlgElem& operator+=(const GAlgElem& o);
    GAlgElem& operator-=(const GAlgElem& o);
    GAlgElem& operator*=(const GAlgElem& o);  // componentwise
    friend GAlgElem operator+(GAlgElem a, const GAlgElem& b) { return a += b; }
    friend GAlgElem operator-(GAlgElem a, const GAlgElem& b) { return a -= b; }
    friend GAlgElem operator*(GAlgElem a, const GAlgElem& b) { return a *= b; }
    GAlgElem operator-() const;
    GAlgElem scaled(const CycScalar& s) const;
    // c with (c.shift(s))_j = c_{j-s}; c y = y c.shift(1), c x = x c.shift(-1)
    GAlgElem shift(int s) const;
    friend bool operator==(const GAlgElem& a, const GAlgElem& b) { return a.c_ == b.c_; }
    friend bool operator!=(const GAlgElem& a, const GAlgElem& b) { return !(a == b); }

  private:
    std::vector<CycScalar> c_;
};

// sigma_l with y^l x = x y^l - y^{l-1} sigma_l; (sigma_l)_i = sum_{t<l} tau_{i-t}
GAlgElem y_power_past_x(const AlgebraContext& ctx, int l);

// PBW normal form sum x^k y^l c_{kl}.
class AlgElem {
  public:
    using Key = std::pair<int, int>;
    AlgElem() = default;
    explicit AlgElem(Ctx ctx) : ctx_(std::move(ctx)) {}

    static AlgElem zero(const Ctx& ctx) { return AlgElem(ctx); }
    static AlgElem one(const Ctx& ctx);
    static AlgElem x(const Ctx& ctx) { return monomial(ctx, 1, 0); }
    static AlgElem y(const Ctx& ctx) { return monomial(ctx, 0, 1); }
    static AlgElem e(const Ctx& ctx, int i);
    static AlgElem scalar(const Ctx& ctx, const CycScalar& c);
    static AlgElem group(const Ctx& ctx, const GAlgElem& g);
    static AlgElem tau(const Ctx& ctx) { return group(ctx, GAlgElem(ctx->tau())); }
    // x^k y^l c
    static AlgElem monomial(const Ctx& ctx, int k, int l, const GAlgElem& c);
    static AlgElem monomial(const Ctx& ctx, int k, int l);
    // c x^k y^l e_i
    static AlgElem term(const Ctx& ctx, const CycScalar& c, int k, int l, int i);

    const Ctx& ctx() const { return ctx_; }
    const std::map<Key, GAlgElem>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int deg_x() const;
    int deg_y() const;
    GAlgElem coeff(int k, int l) const;
    void add_term(int k, int l, const GAlgElem& c);

    AlgElem& operator+=(const AlgElem& o);
    AlgElem& operator-=(const AlgElem& o);
    friend AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
    friend AlgElem operator-(AlgElem a, const AlgElem& b) { return a -= b; }
    AlgElem operator-() const;
    AlgElem scaled(const CycScalar& s) const;
    friend AlgElem operator*(const AlgElem& a, const AlgElem& b);
    friend bool operator==(const AlgElem& a, const AlgElem& b) { return a.t_ == b.t_; }
    friend bool operator!=(const AlgElem& a, const AlgElem& b) { return !(a == b); }

    AlgElem right_mul_x() const;
    AlgElem right_mul_y() const;
    AlgElem right_mul_g(const GAlgElem& g) const;
    AlgElem right_mul_e(int i) const { return right_mul_g(GAlgElem::unit(ctx_->m(), i)); }
    AlgElem left_mul_e(int i) const;

    std::string str() const;
    static AlgElem parse(const Ctx& ctx, const std::string& s);

  private:
    Ctx ctx_;
    std::map<Key, GAlgElem> t_;
    void check_ctx(const AlgElem& o) const;
};

AlgElem multiply(const AlgElem& a, const AlgElem& b);
AlgElem power(const AlgElem& a, int k);
// Terms of maximal weight k w1 + l w2.
AlgElem gr_w_leading(const AlgElem& a, int w1, int w2);
// Single-variable polynomial in x (or y) times e-free unit: sum c_k x^k.
AlgElem poly_in_x(const Ctx& ctx, const CPoly& p);
AlgElem poly_in_y(const Ctx& ctx, const CPoly& p);

// Unreduced words in X, Y, E_i.
struct Letter {
    enum Kind { X, Y, E } kind;
    int idx = 0;
    friend bool operator==(const Letter& a, const Letter& b) { return a.kind == b.kind && a.idx == b.idx; }
};

struct FreeWord {
    CycScalar coef{1};
    std::vector<Letter> letters;
};

class FreeSum {
  public:
    FreeSum() = default;
    explicit FreeSum(std::vector<FreeWord> w) : words_(std::move(w)) {}
    static FreeSum letter(Letter::Kind k, int idx = 0);
    static FreeSum scalar(const CycScalar& c);
    static FreeSum from_poly_y(const CPoly& p);  // sum c_k Y^k
    static FreeSum from_poly_x(const CPoly& p);
    const std::vector<FreeWord>& words() const { return words_; }
    FreeSum& operator+=(const FreeSum& o);
    friend FreeSum operator+(FreeSum a, const FreeSum& b) { return a += b; }
    friend FreeSum operator-(FreeSum a, const FreeSum& b) { return a += b.scaled(CycScalar(-1)); }
    friend FreeSum operator*(const FreeSum& a, const FreeSum& b);
    FreeSum scaled(const CycScalar& c) const;
    FreeSum pow(int k) const;

  private:
    std::vector<FreeWord> words_;
};

// Image of a word sum in B^tau.
AlgElem to_alg(const Ctx& ctx, const FreeSum& s);
// Evaluate on matrices: X -> xm, Y -> ym, E_i -> proj[i].
ExactMatrix eval_word(const FreeSum& s, const ExactMatrix& xm, const ExactMatrix& ym,
                      const std::vector<ExactMatrix>& proj);

}  // namespace kq
