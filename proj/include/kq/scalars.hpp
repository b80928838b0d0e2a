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

#include <gmpxx.h>

#include <Eigen/Core>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kq/errors.hpp"

namespace kq {

using Rational = mpq_class;

Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);

int euler_phi(int m);
// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
const std::vector<Rational>& cyclotomic_poly(int m);

/*
   Element of Q(zeta_m) = Q[t]/(Phi_m(t)), stored as phi(m) rational
   coefficients.  m == 0 marks an untyped rational constant; it adopts the
   order of whatever it is combined with.
*/
class CycScalar {
  public:
    CycScalar() : m_(0), c_(1) {}
    CycScalar(int v) : m_(0), c_{Rational(v)} {}
    CycScalar(long v) : m_(0), c_{Rational(v)} {}
    CycScalar(long long v) : m_(0), c_{Rational(static_cast<long>(v))} {}
    CycScalar(const Rational& q, int m = 0);
    static CycScalar from_coeffs(int m, std::vector<Rational> coeffs);
    static CycScalar zeta(int m, long k = 1);

    int order() const { return m_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rational rational() const;  // throws ContextError if not rational
    CycScalar with_order(int m) const;

    CycScalar inv() const;
    CycScalar operator-() const;
    CycScalar& operator+=(const CycScalar& o);
    CycScalar& operator-=(const CycScalar& o);
    CycScalar& operator*=(const CycScalar& o);
    CycScalar& operator/=(const CycScalar& o) { return *this *= o.inv(); }

    friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
    friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
    friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
    friend CycScalar operator/(CycScalar a, const CycScalar& b) { return a /= b; }
    friend bool operator==(const CycScalar& a, const CycScalar& b);
    friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

    std::string str() const;
    static CycScalar parse(std::string_view s, int m);

  private:
    int m_;
    std::vector<Rational> c_;
    void unify(CycScalar& o);
};

std::ostream& operator<<(std::ostream& os, const CycScalar& c);

// ---------------------------------------------------------------- polynomials

template <class T>
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
    Poly(const T& c) : c_{c} { trim(); }
    static Poly monomial(const T& c, int k) {
        std::vector<T> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }
    static Poly x() { return monomial(T(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    T coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : T(); }
    const std::vector<T>& coeffs() const { return c_; }
    T lc() const { return c_.empty() ? T() : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == T(1); }
    int low_degree() const {
        for (int k = 0; k < static_cast<int>(c_.size()); ++k)
            if (!(c_[k] == T())) return k;
        return -1;
    }

    T operator()(const T& v) const {
        T r{};
        for (int k = degree(); k >= 0; --k) r = r * v + c_[k];
        return r;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == T()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const T& s) const {
        if (s == T()) return Poly();
        Poly r = *this;
        for (auto& c : r.c_) c *= s;
        return r;
    }
    Poly shifted(int k) const {  // multiply by var^k, k >= 0
        if (is_zero()) return Poly();
        std::vector<T> v(k, T());
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(std::move(v));
    }
    Poly derivative() const {
        std::vector<T> v;
        for (int k = 1; k <= degree(); ++k) v.push_back(c_[k] * T(k));
        return Poly(std::move(v));
    }
    // p(s * var)
    Poly scale_var(const T& s) const {
        Poly r = *this;
        T pw(1);
        for (auto& c : r.c_) {
            c *= pw;
            pw *= s;
        }
        r.trim();
        return r;
    }
    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(T(1) / lc());
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  private:
    std::vector<T> c_;
    void trim() {
        while (!c_.empty() && c_.back() == T()) c_.pop_back();
    }
};

template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    std::vector<T> r = a.coeffs();
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {Poly<T>(), a};
    std::vector<T> q(da - db + 1);
    T inv_lc = T(1) / b.lc();
    for (int k = da; k >= db; --k) {
        if (r[k] == T()) continue;
        T f = r[k] * inv_lc;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeff(j);
    }
    r.resize(db);
    return {Poly<T>(std::move(q)), Poly<T>(std::move(r))};
}

template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <class T>
Poly<T> lcm(const Poly<T>& a, const Poly<T>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<T>();
    return divmod(a * b, gcd(a, b)).first.monic();
}

using CPoly = Poly<CycScalar>;

std::string poly_str(const CPoly& p, char var);

// ---------------------------------------------------------- rational functions

class RatFunc {
  public:
    RatFunc() : num_(), den_(CycScalar(1)), var_('x') {}
    RatFunc(const CycScalar& c, char var = 'x') : num_(c), den_(CycScalar(1)), var_(var) {}
    explicit RatFunc(CPoly num, char var = 'x') : num_(std::move(num)), den_(CycScalar(1)), var_(var) {}
    RatFunc(CPoly num, CPoly den, char var = 'x');
    static RatFunc monomial(const CycScalar& c, int k, char var = 'x');  // k may be negative

    const CPoly& num() const { return num_; }
    const CPoly& den() const { return den_; }
    char var() const { return var_; }
    RatFunc with_var(char v) const {
        RatFunc r = *this;
        r.var_ = v;
        return r;
    }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.degree() == 0; }
    // deg num - deg den; very negative for zero
    int degree() const { return is_zero() ? -(1 << 28) : num_.degree() - den_.degree(); }

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    RatFunc scaled(const CycScalar& s) const;
    RatFunc shifted(int k) const;  // multiply by var^k
    RatFunc derivative() const;
    RatFunc inv() const;
    RatFunc scale_var(const CycScalar& s) const;  // f(s var)
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    std::string str() const;

  private:
    CPoly num_, den_;
    char var_;
    void normalize();
};

// Residue of the exponents if all nonzero coefficients share it (zero: 0).
std::optional<int> poly_sector(const CPoly& p, int m);
CPoly sector_part(const CPoly& p, int r, int m);
// Keep the var^k coefficients with k = r (mod m) of the expansion of f.
RatFunc sector_project(const RatFunc& f, int r, int m);
// Residue r with f(zeta var) = zeta^r f(var), or nullopt if f mixes sectors. Zero gives 0.
std::optional<int> sector_of(const RatFunc& f, int m);
std::pair<CPoly, RatFunc> poly_part(const RatFunc& f);
// Coefficients c_e of var^e for lowest <= e <= degree of the expansion at infinity.
std::map<int, CycScalar> laurent_at_infinity(const RatFunc& f, int lowest);
// First `count` Taylor coefficients at 0; den(0) must be nonzero.
std::vector<CycScalar> series_at_zero(const RatFunc& f, int count);

}  // namespace kq

namespace Eigen {
template <>
struct NumTraits<kq::CycScalar> : GenericNumTraits<kq::CycScalar> {
    typedef kq::CycScalar Real;
    typedef kq::CycScalar NonInteger;
    typedef kq::CycScalar Nested;
    typedef kq::CycScalar Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 20,
        AddCost = 50,
        MulCost = 100
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace kq {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
using ExactMatrix = Mat<CycScalar>;

template <class S>
Mat<S> zeros(Eigen::Index r, Eigen::Index c) {
    return Mat<S>::Constant(r, c, S(0));
}
template <class S>
Mat<S> identity(Eigen::Index n) {
    Mat<S> r = zeros<S>(n, n);
    for (Eigen::Index i = 0; i < n; ++i) r(i, i) = S(1);
    return r;
}
template <class S>
bool is_zero(const Mat<S>& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == S(0))) return false;
    return true;
}
template <class S>
bool equal(const Mat<S>& a, const Mat<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == b(i, j))) return false;
    return true;
}
template <class S>
Mat<S> matmul(const Mat<S>& a, const Mat<S>& b) {
    if (a.cols() != b.rows()) throw ShapeError("matmul: inner dimensions differ");
    Mat<S> r = zeros<S>(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            if (a(i, k) == S(0)) continue;
            for (Eigen::Index j = 0; j < b.cols(); ++j)
                if (!(b(k, j) == S(0))) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

// Reduced row echelon form in place; returns pivot columns.
template <class S>
std::vector<Eigen::Index> rref(Mat<S>& a) {
    std::vector<Eigen::Index> piv;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
        Eigen::Index p = -1;
        for (Eigen::Index i = row; i < a.rows(); ++i)
            if (!(a(i, col) == S(0))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row) a.row(p).swap(a.row(row));
        S inv = S(1) / a(row, col);
        for (Eigen::Index j = col; j < a.cols(); ++j)
            if (!(a(row, j) == S(0))) a(row, j) *= inv;
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == S(0)) continue;
            S f = a(i, col);
            for (Eigen::Index j = col; j < a.cols(); ++j)
                if (!(a(row, j) == S(0))) a(i, j) -= f * a(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

template <class S>
Eigen::Index rank(Mat<S> a) {
    return static_cast<Eigen::Index>(rref(a).size());
}

template <class S>
S det(Mat<S> a) {
    if (a.rows() != a.cols()) throw ShapeError("det: matrix not square");
    const Eigen::Index n = a.rows();
    S d(1);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = -1;
        for (Eigen::Index i = c; i < n; ++i)
            if (!(a(i, c) == S(0))) {
                p = i;
                break;
            }
        if (p < 0) return S(0);
        if (p != c) {
            a.row(p).swap(a.row(c));
            d = -d;
        }
        d *= a(c, c);
        S inv = S(1) / a(c, c);
        for (Eigen::Index i = c + 1; i < n; ++i) {
            if (a(i, c) == S(0)) continue;
            S f = a(i, c) * inv;
            for (Eigen::Index j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return d;
}

// Columns form a basis of {v : a v = 0}.
template <class S>
Mat<S> nullspace(const Mat<S>& a) {
    Mat<S> r = a;
    auto piv = rref(r);
    std::vector<bool> is_piv(a.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    Eigen::Index nfree = a.cols() - static_cast<Eigen::Index>(piv.size());
    Mat<S> ns = zeros<S>(a.cols(), nfree);
    Eigen::Index k = 0;
    for (Eigen::Index f = 0; f < a.cols(); ++f) {
        if (is_piv[f]) continue;
        ns(f, k) = S(1);
        for (size_t i = 0; i < piv.size(); ++i) ns(piv[i], k) = -r(static_cast<Eigen::Index>(i), f);
        ++k;
    }
    return ns;
}

// Some solution of a x = b (b may have several columns), or nullopt.
template <class S>
std::optional<Mat<S>> solve(const Mat<S>& a, const Mat<S>& b) {
    if (a.rows() != b.rows()) throw ShapeError("solve: row counts differ");
    Mat<S> aug(a.rows(), a.cols() + b.cols());
    aug << a, b;
    auto piv = rref(aug);
    for (auto c : piv)
        if (c >= a.cols()) return std::nullopt;
    Mat<S> x = zeros<S>(a.cols(), b.cols());
    for (size_t i = 0; i < piv.size(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) x(piv[i], j) = aug(static_cast<Eigen::Index>(i), a.cols() + j);
    return x;
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& a) {
    if (a.rows() != a.cols()) throw ShapeError("inverse: matrix not square");
    if (rank(a) < a.rows()) return std::nullopt;
    return solve<S>(a, identity<S>(a.rows()));
}

// det(t I - a), monic; Faddeev-LeVerrier (characteristic zero).
template <class S>
Poly<S> charpoly(const Mat<S>& a) {
    if (a.rows() != a.cols()) throw ShapeError("charpoly: matrix not square");
    const Eigen::Index n = a.rows();
    std::vector<S> c(n + 1);
    c[n] = S(1);
    Mat<S> mk = zeros<S>(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        Mat<S> t = matmul<S>(a, mk);
        for (Eigen::Index i = 0; i < n; ++i) t(i, i) += c[n - k + 1];
        mk = t;
        Mat<S> am = matmul<S>(a, mk);
        S tr(0);
        for (Eigen::Index i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / S(static_cast<long>(k));
    }
    return Poly<S>(std::move(c));
}

template <class S>
Mat<S> adjugate(const Mat<S>& a) {
    if (a.rows() != a.cols()) throw ShapeError("adjugate: matrix not square");
    const Eigen::Index n = a.rows();
    if (n == 0) return Mat<S>(0, 0);
    auto cp = charpoly(a);
    // adj(a) = (-1)^(n+1) (a^(n-1) + c_{n-1} a^(n-2) + ... + c_1), by Horner
    Mat<S> h = identity<S>(n);
    for (Eigen::Index k = n - 1; k >= 1; --k) {
        h = matmul<S>(a, h);
        for (Eigen::Index i = 0; i < n; ++i) h(i, i) += cp.coeff(static_cast<int>(k));
    }
    if (n % 2 == 0) h = -h;
    return h;
}

// adj(t I - a) = sum_j t^j A_j; returns the A_j, j = 0..n-1.
template <class S>
std::vector<Mat<S>> adjugate_pencil(const Mat<S>& a) {
    const Eigen::Index n = a.rows();
    std::vector<Mat<S>> out;
    if (n == 0) return out;
    auto cp = charpoly(a);
    std::vector<Mat<S>> pw{identity<S>(n)};
    for (Eigen::Index i = 1; i < n; ++i) pw.push_back(matmul<S>(a, pw.back()));
    for (Eigen::Index j = 0; j < n; ++j) {
        Mat<S> aj = zeros<S>(n, n);
        for (Eigen::Index i = 0; i + j + 1 <= n; ++i) {
            S c = cp.coeff(static_cast<int>(i + j + 1));
            if (!(c == S(0))) aj += pw[i] * c;
        }
        out.push_back(aj);
    }
    return out;
}

template <class S>
Mat<S> matpow(const Mat<S>& a, int k) {
    Mat<S> r = identity<S>(a.rows());
    for (int i = 0; i < k; ++i) r = matmul<S>(r, a);
    return r;
}

}  // namespace kq
