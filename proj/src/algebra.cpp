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
#include "kq/algebra.hpp"

#include <cctype>
#include <sstream>

namespace kq {

// ---------------------------------------------------------------- context

AlgebraContext::AlgebraContext(int m, std::vector<CycScalar> tau, int genericity_bound)
    : m_(m), bound_(genericity_bound) {
    if (m < 1) throw ContextError("group order must be positive");
    if (static_cast<int>(tau.size()) != m) throw ContextError("tau must have m components");
    for (auto& t : tau) tau_.push_back(t.order() == m ? t : t.with_order(m));
}

CycScalar AlgebraContext::tau_sum() const {
    CycScalar s(Rational(0), m_);
    for (const auto& t : tau_) s += t;
    return s;
}

Ctx AlgebraContext::mirror() const {
    std::vector<CycScalar> t(m_);
    for (int j = 0; j < m_; ++j) t[j] = -tau_at(-j);
    return std::make_shared<const AlgebraContext>(m_, std::move(t), bound_);
}

Ctx make_context(int m, std::vector<CycScalar> tau, int genericity_bound) {
    return std::make_shared<const AlgebraContext>(m, std::move(tau), genericity_bound);
}

Ctx int_context(int m, const std::vector<long>& tau) {
    std::vector<CycScalar> t;
    for (long v : tau) t.push_back(CycScalar(Rational(v), m));
    return make_context(m, std::move(t));
}

bool is_generic(const AlgebraContext& ctx) {
    const int m = ctx.m();
    CycScalar s = ctx.tau_sum();
    if (s.is_zero()) return false;
    for (int i = 0; i < m; ++i) {
        CycScalar acc(Rational(0), m);
        for (int len = 1; len < m; ++len) {
            acc += ctx.tau_at(i + len - 1);
            for (int k = -ctx.genericity_bound(); k <= ctx.genericity_bound(); ++k)
                if ((acc + s * CycScalar(Rational(k), m)).is_zero()) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- GAlgElem

GAlgElem GAlgElem::unit(int m, int i) {
    GAlgElem g(m);
    g.c_[((i % m) + m) % m] = CycScalar(1);
    return g;
}

bool GAlgElem::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

GAlgElem& GAlgElem::operator+=(const GAlgElem& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}
GAlgElem& GAlgElem::operator-=(const GAlgElem& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}
GAlgElem& GAlgElem::operator*=(const GAlgElem& o) {
    for (size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) c_[i] *= o.c_[i];
    return *this;
}
GAlgElem GAlgElem::operator-() const {
    GAlgElem r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}
GAlgElem GAlgElem::scaled(const CycScalar& s) const {
    GAlgElem r = *this;
    for (auto& c : r.c_)
        if (!c.is_zero()) c *= s;
    return r;
}
GAlgElem GAlgElem::shift(int s) const {
    const int m = static_cast<int>(c_.size());
    GAlgElem r(m);
    for (int j = 0; j < m; ++j) r.c_[j] = c_[((j - s) % m + m) % m];
    return r;
}

GAlgElem y_power_past_x(const AlgebraContext& ctx, int l) {
    GAlgElem s(ctx.m());
    for (int i = 0; i < ctx.m(); ++i) {
        CycScalar acc(Rational(0), ctx.m());
        for (int t = 0; t < l; ++t) acc += ctx.tau_at(i - t);
        s[i] = acc;
    }
    return s;
}

// ---------------------------------------------------------------- AlgElem

AlgElem AlgElem::one(const Ctx& ctx) { return group(ctx, GAlgElem::constant(ctx->m(), CycScalar(1))); }
AlgElem AlgElem::e(const Ctx& ctx, int i) { return group(ctx, GAlgElem::unit(ctx->m(), i)); }
AlgElem AlgElem::scalar(const Ctx& ctx, const CycScalar& c) {
    return group(ctx, GAlgElem::constant(ctx->m(), c));
}
AlgElem AlgElem::group(const Ctx& ctx, const GAlgElem& g) { return monomial(ctx, 0, 0, g); }
AlgElem AlgElem::monomial(const Ctx& ctx, int k, int l, const GAlgElem& c) {
    AlgElem a(ctx);
    a.add_term(k, l, c);
    return a;
}
AlgElem AlgElem::monomial(const Ctx& ctx, int k, int l) {
    return monomial(ctx, k, l, GAlgElem::constant(ctx->m(), CycScalar(1)));
}
AlgElem AlgElem::term(const Ctx& ctx, const CycScalar& c, int k, int l, int i) {
    return monomial(ctx, k, l, GAlgElem::unit(ctx->m(), i).scaled(c));
}

int AlgElem::deg_x() const {
    int d = -1;
    for (const auto& [key, c] : t_) d = std::max(d, key.first);
    return d;
}
int AlgElem::deg_y() const {
    int d = -1;
    for (const auto& [key, c] : t_) d = std::max(d, key.second);
    return d;
}
GAlgElem AlgElem::coeff(int k, int l) const {
    auto it = t_.find({k, l});
    return it == t_.end() ? GAlgElem(ctx_->m()) : it->second;
}

void AlgElem::add_term(int k, int l, const GAlgElem& c) {
    if (c.is_zero()) return;
    auto [it, ins] = t_.try_emplace({k, l}, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

void AlgElem::check_ctx(const AlgElem& o) const {
    if (!ctx_ || !o.ctx_) return;
    if (ctx_ != o.ctx_ && !(*ctx_ == *o.ctx_)) throw ContextError("algebra elements from different contexts");
}

AlgElem& AlgElem::operator+=(const AlgElem& o) {
    check_ctx(o);
    if (!ctx_) ctx_ = o.ctx_;
    for (const auto& [k, c] : o.t_) add_term(k.first, k.second, c);
    return *this;
}
AlgElem& AlgElem::operator-=(const AlgElem& o) {
    check_ctx(o);
    if (!ctx_) ctx_ = o.ctx_;
    for (const auto& [k, c] : o.t_) add_term(k.first, k.second, -c);
    return *this;
}
AlgElem AlgElem::operator-() const {
    AlgElem r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}
AlgElem AlgElem::scaled(const CycScalar& s) const {
    if (s.is_zero()) return AlgElem(ctx_);
    AlgElem r = *this;
    for (auto& [k, c] : r.t_) c = c.scaled(s);
    return r;
}

AlgElem AlgElem::right_mul_x() const {
    AlgElem r(ctx_);
    for (const auto& [key, c] : t_) {
        auto [k, l] = key;
        GAlgElem cd = c.shift(-1);
        r.add_term(k + 1, l, cd);
        if (l > 0) r.add_term(k, l - 1, -(y_power_past_x(*ctx_, l) * cd));
    }
    return r;
}

AlgElem AlgElem::right_mul_y() const {
    AlgElem r(ctx_);
    for (const auto& [key, c] : t_) r.add_term(key.first, key.second + 1, c.shift(1));
    return r;
}

AlgElem AlgElem::right_mul_g(const GAlgElem& g) const {
    AlgElem r(ctx_);
    for (const auto& [key, c] : t_) r.add_term(key.first, key.second, c * g);
    return r;
}

AlgElem AlgElem::left_mul_e(int i) const {
    AlgElem r(ctx_);
    const int m = ctx_->m();
    for (const auto& [key, c] : t_) {
        GAlgElem g(m);
        int j = ctx_->mod(i - key.first + key.second);
        g[j] = c[j];
        r.add_term(key.first, key.second, g);
    }
    return r;
}

AlgElem operator*(const AlgElem& a, const AlgElem& b) {
    a.check_ctx(b);
    const Ctx& ctx = a.ctx_ ? a.ctx_ : b.ctx_;
    AlgElem r(ctx);
    if (a.is_zero() || b.is_zero()) return r;
    std::vector<AlgElem> ax{a};
    int kmax = b.deg_x();
    for (int k = 1; k <= kmax; ++k) ax.push_back(ax.back().right_mul_x());
    for (const auto& [key, d] : b.t_) {
        auto [k, l] = key;
        for (const auto& [ka, c] : ax[k].t_) r.add_term(ka.first, ka.second + l, c.shift(l) * d);
    }
    return r;
}

AlgElem multiply(const AlgElem& a, const AlgElem& b) { return a * b; }

AlgElem power(const AlgElem& a, int k) {
    AlgElem r = AlgElem::one(a.ctx());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

AlgElem gr_w_leading(const AlgElem& a, int w1, int w2) {
    if (w1 < 0 || w2 < 0 || (w1 == 0 && w2 == 0)) throw ShapeError("weights must be nonnegative, not both 0");
    AlgElem r(a.ctx());
    long best = -1;
    for (const auto& [key, c] : a.terms()) best = std::max(best, static_cast<long>(key.first) * w1 + static_cast<long>(key.second) * w2);
    for (const auto& [key, c] : a.terms())
        if (static_cast<long>(key.first) * w1 + static_cast<long>(key.second) * w2 == best) r.add_term(key.first, key.second, c);
    return r;
}

AlgElem poly_in_x(const Ctx& ctx, const CPoly& p) {
    AlgElem r(ctx);
    for (int k = 0; k <= p.degree(); ++k)
        if (!p.coeff(k).is_zero()) r.add_term(k, 0, GAlgElem::constant(ctx->m(), p.coeff(k)));
    return r;
}
AlgElem poly_in_y(const Ctx& ctx, const CPoly& p) {
    AlgElem r(ctx);
    for (int k = 0; k <= p.degree(); ++k)
        if (!p.coeff(k).is_zero()) r.add_term(0, k, GAlgElem::constant(ctx->m(), p.coeff(k)));
    return r;
}

// ---------------------------------------------------------------- text

namespace {

std::string coef_prefix(const CycScalar& c, bool first, bool has_mono) {
    std::string out;
    if (c.is_rational()) {
        Rational q = c.rational();
        bool neg = q < 0;
        if (neg) q = -q;
        out = first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (!(q == 1 && has_mono)) out += to_string(q) + (has_mono ? " " : "");
        return out;
    }
    out = first ? "" : " + ";
    return out + c.str() + (has_mono ? " " : "");
}

}  // namespace

std::string AlgElem::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : t_) {
        for (int i = 0; i < c.m(); ++i) {
            if (c[i].is_zero()) continue;
            std::string mono;
            if (key.first) mono += key.first == 1 ? "x " : "x^" + std::to_string(key.first) + " ";
            if (key.second) mono += key.second == 1 ? "y " : "y^" + std::to_string(key.second) + " ";
            mono += "e" + std::to_string(i);
            os << coef_prefix(c[i], first, true) << mono;
            first = false;
        }
    }
    return os.str();
}

AlgElem AlgElem::parse(const Ctx& ctx, const std::string& s) {
    // split into signed terms at top-level + and -
    std::vector<std::pair<int, std::string>> terms;
    int depth = 0, sign = 1;
    std::string cur;
    auto flush = [&]() {
        bool blank = true;
        for (char ch : cur)
            if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
        if (!blank) terms.push_back({sign, cur});
        cur.clear();
    };
    for (size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && (ch == '+' || ch == '-')) {
            bool prev_is_op = true;
            for (size_t j = 0; j < cur.size(); ++j)
                if (!std::isspace(static_cast<unsigned char>(cur[j]))) prev_is_op = false;
            if (prev_is_op) {
                if (ch == '-') sign = -sign;
                continue;
            }
            flush();
            sign = ch == '-' ? -1 : 1;
            continue;
        }
        cur.push_back(ch);
    }
    flush();
    if (depth != 0) throw ParseError("unbalanced parentheses in '" + s + "'");
    AlgElem total(ctx);
    for (auto& [sg, body] : terms) {
        AlgElem prod = AlgElem::scalar(ctx, CycScalar(Rational(sg), ctx->m()));
        size_t p = 0;
        while (p < body.size()) {
            char ch = body[p];
            if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*') {
                ++p;
                continue;
            }
            if (ch == '(') {
                size_t q = body.find(')', p);
                if (q == std::string::npos) throw ParseError("unbalanced parentheses");
                prod = prod.scaled(CycScalar::parse(body.substr(p, q - p + 1), ctx->m()));
                p = q + 1;
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                size_t q = p;
                while (q < body.size() && (std::isdigit(static_cast<unsigned char>(body[q])) || body[q] == '/')) ++q;
                prod = prod.scaled(CycScalar(parse_rational(body.substr(p, q - p)), ctx->m()));
                p = q;
            } else if (ch == 'x' || ch == 'y') {
                int k = 1;
                ++p;
                if (p < body.size() && body[p] == '^') {
                    size_t q = ++p;
                    while (q < body.size() && std::isdigit(static_cast<unsigned char>(body[q]))) ++q;
                    if (q == p) throw ParseError("missing exponent in '" + body + "'");
                    k = std::stoi(body.substr(p, q - p));
                    p = q;
                }
                prod = prod * (ch == 'x' ? AlgElem::monomial(ctx, k, 0) : AlgElem::monomial(ctx, 0, k));
            } else if (ch == 'e') {
                size_t q = ++p;
                if (q < body.size() && body[q] == '_') p = ++q;
                while (q < body.size() && std::isdigit(static_cast<unsigned char>(body[q]))) ++q;
                if (q == p) throw ParseError("missing idempotent index in '" + body + "'");
                int i = std::stoi(body.substr(p, q - p));
                if (i >= ctx->m()) throw ParseError("idempotent index out of range in '" + body + "'");
                prod = prod * AlgElem::e(ctx, i);
                p = q;
            } else {
                throw ParseError("unexpected character '" + std::string(1, ch) + "' in '" + body + "'");
            }
        }
        total += prod;
    }
    return total;
}

// ---------------------------------------------------------------- free words

FreeSum FreeSum::letter(Letter::Kind k, int idx) {
    FreeWord w;
    w.letters.push_back(Letter{k, idx});
    return FreeSum({w});
}

FreeSum FreeSum::scalar(const CycScalar& c) {
    FreeWord w;
    w.coef = c;
    return FreeSum({w});
}

FreeSum FreeSum::from_poly_y(const CPoly& p) {
    FreeSum r;
    for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k).is_zero()) continue;
        FreeWord w;
        w.coef = p.coeff(k);
        w.letters.assign(k, Letter{Letter::Y, 0});
        r.words_.push_back(w);
    }
    return r;
}

FreeSum FreeSum::from_poly_x(const CPoly& p) {
    FreeSum r;
    for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k).is_zero()) continue;
        FreeWord w;
        w.coef = p.coeff(k);
        w.letters.assign(k, Letter{Letter::X, 0});
        r.words_.push_back(w);
    }
    return r;
}

FreeSum& FreeSum::operator+=(const FreeSum& o) {
    words_.insert(words_.end(), o.words_.begin(), o.words_.end());
    return *this;
}

FreeSum operator*(const FreeSum& a, const FreeSum& b) {
    FreeSum r;
    for (const auto& u : a.words_)
        for (const auto& v : b.words_) {
            FreeWord w;
            w.coef = u.coef * v.coef;
            w.letters = u.letters;
            w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
            r.words_.push_back(std::move(w));
        }
    return r;
}

FreeSum FreeSum::scaled(const CycScalar& c) const {
    FreeSum r = *this;
    for (auto& w : r.words_) w.coef *= c;
    return r;
}

FreeSum FreeSum::pow(int k) const {
    FreeSum r = FreeSum::scalar(CycScalar(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

AlgElem to_alg(const Ctx& ctx, const FreeSum& s) {
    AlgElem r(ctx);
    for (const auto& w : s.words()) {
        AlgElem a = AlgElem::scalar(ctx, w.coef);
        for (const auto& L : w.letters) {
            if (L.kind == Letter::X) a = a.right_mul_x();
            else if (L.kind == Letter::Y) a = a.right_mul_y();
            else a = a.right_mul_e(L.idx);
        }
        r += a;
    }
    return r;
}

ExactMatrix eval_word(const FreeSum& s, const ExactMatrix& xm, const ExactMatrix& ym,
                      const std::vector<ExactMatrix>& proj) {
    const auto n = xm.rows();
    if (xm.cols() != n || ym.rows() != n || ym.cols() != n) throw ShapeError("eval_word: matrices not square of equal size");
    ExactMatrix r = zeros<CycScalar>(n, n);
    for (const auto& w : s.words()) {
        ExactMatrix a = identity<CycScalar>(n);
        for (const auto& L : w.letters) {
            if (L.kind == Letter::X) a = matmul<CycScalar>(a, xm);
            else if (L.kind == Letter::Y) a = matmul<CycScalar>(a, ym);
            else {
                if (L.idx < 0 || L.idx >= static_cast<int>(proj.size())) throw ShapeError("eval_word: idempotent index out of range");
                a = matmul<CycScalar>(a, proj[L.idx]);
            }
        }
        r += a * w.coef;
    }
    return r;
}

}  // namespace kq
