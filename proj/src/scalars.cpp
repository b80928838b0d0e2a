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
#include "kq/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <sstream>

namespace kq {

namespace {

std::string trim(std::string_view s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

struct CycData {
    int phi = 1;
    std::vector<Rational> cyclo;            // Phi_m, low first, monic
    std::vector<std::vector<Rational>> red;  // red[k] = t^k mod Phi_m
};

// exact quotient of monic-divisor division
std::vector<Rational> qpoly_div(std::vector<Rational> a, const std::vector<Rational>& b) {
    int db = static_cast<int>(b.size()) - 1, da = static_cast<int>(a.size()) - 1;
    std::vector<Rational> q(da - db + 1);
    for (int k = da; k >= db; --k) {
        Rational f = a[k] / b[db];
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) a[k - db + j] -= f * b[j];
    }
    return q;
}

const CycData& cyc_data(int m) {
    static std::recursive_mutex mu;
    static std::map<int, std::unique_ptr<CycData>> cache;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return *it->second;
    auto d = std::make_unique<CycData>();
    // Phi_m = (t^m - 1) / prod_{d | m, d < m} Phi_d
    std::vector<Rational> num(m + 1);
    num[0] = -1;
    num[m] = 1;
    for (int e = 1; e < m; ++e) {
        if (m % e) continue;
        num = qpoly_div(num, cyc_data(e).cyclo);
    }
    d->cyclo = num;
    d->phi = static_cast<int>(num.size()) - 1;
    int need = std::max(2 * d->phi, m + 1);
    std::vector<Rational> cur(d->phi);
    cur[0] = 1;
    for (int k = 0; k < need; ++k) {
        d->red.push_back(cur);
        // multiply cur by t, reduce
        std::vector<Rational> nxt(d->phi);
        Rational top = cur[d->phi - 1];
        for (int i = d->phi - 1; i >= 1; --i) nxt[i] = cur[i - 1];
        nxt[0] = 0;
        if (top != 0)
            for (int i = 0; i < d->phi; ++i) nxt[i] -= top * d->cyclo[i];
        cur = nxt;
    }
    auto* raw = d.get();
    cache.emplace(m, std::move(d));
    return *raw;
}

}  // namespace

Rational parse_rational(std::string_view sv) {
    std::string s = trim(sv);
    if (!s.empty() && s[0] == '+') s = s.substr(1);
    if (s.empty()) throw ParseError("empty rational");
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
            throw ParseError("bad rational '" + s + "'");
    Rational q;
    try {
        q = Rational(s, 10);
    } catch (const std::exception&) {
        throw ParseError("bad rational '" + s + "'");
    }
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

int euler_phi(int m) {
    if (m <= 0) return 1;
    int r = m, n = m;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

const std::vector<Rational>& cyclotomic_poly(int m) {
    if (m < 1) throw ContextError("cyclotomic order must be positive");
    return cyc_data(m).cyclo;
}

// ------------------------------------------------------------------ CycScalar

CycScalar::CycScalar(const Rational& q, int m) : m_(m), c_(euler_phi(m)) {
    if (m < 0) throw ContextError("negative cyclotomic order");
    c_[0] = q;
    c_[0].canonicalize();
}

CycScalar CycScalar::from_coeffs(int m, std::vector<Rational> coeffs) {
    if (m < 1) throw ContextError("cyclotomic order must be positive");
    const auto& d = cyc_data(m);
    CycScalar r(Rational(0), m);
    for (auto& c : coeffs) c.canonicalize();
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        if (k >= d.red.size()) {
            // reduce t^k by t^m = 1 first
            size_t kk = k % static_cast<size_t>(m);
            for (int i = 0; i < d.phi; ++i) r.c_[i] += coeffs[k] * d.red[kk][i];
        } else {
            for (int i = 0; i < d.phi; ++i) r.c_[i] += coeffs[k] * d.red[k][i];
        }
    }
    return r;
}

CycScalar CycScalar::zeta(int m, long k) {
    if (m < 1) throw ContextError("cyclotomic order must be positive");
    long kk = ((k % m) + m) % m;
    const auto& d = cyc_data(m);
    CycScalar r(Rational(0), m);
    r.c_ = d.red[kk];
    return r;
}

bool CycScalar::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool CycScalar::is_one() const {
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool CycScalar::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational CycScalar::rational() const {
    if (!is_rational()) throw ContextError("scalar " + str() + " is not rational");
    return c_[0];
}

CycScalar CycScalar::with_order(int m) const {
    if (m == m_) return *this;
    if (!is_rational()) throw ContextError("cannot change order of irrational scalar");
    return CycScalar(c_[0], m);
}

void CycScalar::unify(CycScalar& o) {
    if (m_ == o.m_) return;
    if (m_ == 0 || (o.m_ != 0 && is_rational() && !o.is_rational())) {
        *this = with_order(o.m_);
    } else if (o.m_ == 0 || o.is_rational()) {
        o = o.with_order(m_);
    } else if (is_rational()) {
        *this = with_order(o.m_);
    } else {
        throw ContextError("cyclotomic orders " + std::to_string(m_) + " and " + std::to_string(o.m_) +
                           " do not match");
    }
}

CycScalar CycScalar::operator-() const {
    CycScalar r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

CycScalar& CycScalar::operator+=(const CycScalar& o0) {
    if (m_ == o0.m_) {
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o0.c_[i];
        return *this;
    }
    CycScalar o = o0;
    unify(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o0) {
    if (m_ == o0.m_) {
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o0.c_[i];
        return *this;
    }
    CycScalar o = o0;
    unify(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycScalar& CycScalar::operator*=(const CycScalar& o0) {
    if (c_.size() == 1 && o0.c_.size() == 1) {
        c_[0] *= o0.c_[0];
        if (m_ == 0) m_ = o0.m_;
        return *this;
    }
    CycScalar o = o0;
    unify(o);
    const int phi = static_cast<int>(c_.size());
    if (phi == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    const auto& d = cyc_data(m_);
    std::vector<Rational> prod(2 * phi - 1);
    bool any = false;
    for (int i = 0; i < phi; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < phi; ++j) {
            if (o.c_[j] == 0) continue;
            prod[i + j] += c_[i] * o.c_[j];
            any = true;
        }
    }
    std::vector<Rational> r(phi);
    if (any) {
        for (int k = 0; k < 2 * phi - 1; ++k) {
            if (prod[k] == 0) continue;
            if (k < phi) {
                r[k] += prod[k];
            } else {
                const auto& t = d.red[k];
                for (int i = 0; i < phi; ++i)
                    if (t[i] != 0) r[i] += prod[k] * t[i];
            }
        }
    }
    c_ = std::move(r);
    return *this;
}

CycScalar CycScalar::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero scalar");
    const int phi = static_cast<int>(c_.size());
    if (phi == 1) {
        CycScalar r = *this;
        r.c_[0] = 1 / c_[0];
        return r;
    }
    // columns: this * t^j
    std::vector<std::vector<Rational>> a(phi, std::vector<Rational>(phi + 1));
    for (int j = 0; j < phi; ++j) {
        CycScalar tj = zeta(m_, j);
        CycScalar p = *this * tj;
        for (int i = 0; i < phi; ++i) a[i][j] = p.c_[i];
    }
    a[0][phi] = 1;
    for (int col = 0; col < phi; ++col) {
        int p = col;
        while (a[p][col] == 0) ++p;
        std::swap(a[p], a[col]);
        Rational inv = 1 / a[col][col];
        for (int j = col; j <= phi; ++j) a[col][j] *= inv;
        for (int i = 0; i < phi; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (int j = col; j <= phi; ++j) a[i][j] -= f * a[col][j];
        }
    }
    CycScalar r(Rational(0), m_);
    for (int i = 0; i < phi; ++i) r.c_[i] = a[i][phi];
    return r;
}

bool operator==(const CycScalar& a, const CycScalar& b) {
    if (a.m_ == b.m_) return a.c_ == b.c_;
    if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
    return false;
}

std::string CycScalar::str() const {
    if (is_rational()) return to_string(c_[0]);
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        Rational v = c_[k];
        if (!first) {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        if (k == 0) {
            os << to_string(v);
        } else {
            if (v != 1) os << to_string(v) << "*";
            os << "z";
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    os << ")";
    return os.str();
}

CycScalar CycScalar::parse(std::string_view sv, int m) {
    std::string s = trim(sv);
    if (s.empty()) throw ParseError("empty scalar");
    if (s.front() == '(' && s.back() == ')') s = trim(std::string_view(s).substr(1, s.size() - 2));
    if (s.find('z') == std::string::npos) {
        Rational q = parse_rational(s);
        return m >= 1 ? CycScalar(q, m) : CycScalar(q);
    }
    if (m < 1) throw ParseError("cyclotomic scalar needs an order");
    std::vector<Rational> coeffs(m);
    size_t pos = 0;
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    while (pos < t.size()) {
        int sign = 1;
        if (t[pos] == '+' || t[pos] == '-') {
            if (t[pos] == '-') sign = -1;
            ++pos;
        }
        size_t end = pos;
        while (end < t.size() && t[end] != '+' && t[end] != '-') {
            if (t[end] == '^') {
                ++end;
                if (end < t.size() && t[end] == '-') ++end;
            } else {
                ++end;
            }
        }
        std::string term = t.substr(pos, end - pos);
        pos = end;
        if (term.empty()) throw ParseError("bad scalar '" + s + "'");
        size_t zp = term.find('z');
        Rational coef(1);
        long power = 0;
        if (zp == std::string::npos) {
            coef = parse_rational(term);
        } else {
            std::string cpart = term.substr(0, zp);
            if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
            if (!cpart.empty()) coef = parse_rational(cpart);
            std::string epart = term.substr(zp + 1);
            power = 1;
            if (!epart.empty()) {
                if (epart[0] != '^') throw ParseError("bad scalar term '" + term + "'");
                try {
                    power = std::stol(epart.substr(1));
                } catch (const std::exception&) {
                    throw ParseError("bad exponent in '" + term + "'");
                }
            }
        }
        long k = ((power % m) + m) % m;
        coeffs[k] += sign * coef;
    }
    return from_coeffs(m, coeffs);
}

std::ostream& operator<<(std::ostream& os, const CycScalar& c) { return os << c.str(); }

// ---------------------------------------------------------------- polynomials

std::string poly_str(const CPoly& p, char var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        CycScalar c = p.coeff(k);
        if (c.is_zero()) continue;
        std::string cs;
        bool neg = false;
        if (c.is_rational()) {
            Rational q = c.rational();
            if (q < 0) {
                neg = true;
                q = -q;
            }
            cs = to_string(q);
        } else {
            cs = c.str();
        }
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        if (k == 0) {
            os << cs;
        } else {
            if (cs != "1") os << cs << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------- rational functions

RatFunc::RatFunc(CPoly num, CPoly den, char var) : num_(std::move(num)), den_(std::move(den)), var_(var) {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    normalize();
}

RatFunc RatFunc::monomial(const CycScalar& c, int k, char var) {
    if (k >= 0) return RatFunc(CPoly::monomial(c, k), var);
    return RatFunc(CPoly(c), CPoly::monomial(CycScalar(1), -k), var);
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = CPoly(CycScalar(1));
        return;
    }
    if (den_.degree() > 0) {
        CPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
    }
    if (!den_.is_monic()) {
        CycScalar l = den_.lc().inv();
        num_ = num_.scaled(l);
        den_ = den_.scaled(l);
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
        char v = var_;
        *this = o;
        var_ = v;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        if (den_.degree() > 0) normalize();
        else if (num_.is_zero()) den_ = CPoly(CycScalar(1));
        return *this;
    }
    CPoly g = gcd(den_, o.den_);
    CPoly a = divmod(den_, g).first, b = divmod(o.den_, g).first;
    num_ = num_ * b + o.num_ * a;
    den_ = den_ * b;
    normalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) {
        num_ = CPoly();
        den_ = CPoly(CycScalar(1));
        return *this;
    }
    if (is_poly() && o.is_poly()) {
        num_ = num_ * o.num_;
        return *this;
    }
    // cross-cancel before multiplying
    CPoly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    CPoly n1 = divmod(num_, g1).first, d2 = divmod(o.den_, g1).first;
    CPoly n2 = divmod(o.num_, g2).first, d1 = divmod(den_, g2).first;
    num_ = n1 * n2;
    den_ = d1 * d2;
    if (!den_.is_monic()) normalize();
    return *this;
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero rational function");
    RatFunc r;
    r.var_ = var_;
    r.num_ = den_;
    r.den_ = num_;
    r.normalize();
    return r;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inv(); }

RatFunc RatFunc::scaled(const CycScalar& s) const {
    if (s.is_zero()) return RatFunc(CycScalar(0), var_);
    RatFunc r = *this;
    r.num_ = r.num_.scaled(s);
    return r;
}

RatFunc RatFunc::shifted(int k) const {
    if (k == 0 || is_zero()) return *this;
    if (k > 0) {
        if (den_.degree() == 0) {
            RatFunc r = *this;
            r.num_ = r.num_.shifted(k);
            return r;
        }
        return RatFunc(num_.shifted(k), den_, var_);
    }
    return RatFunc(num_, den_.shifted(-k), var_);
}

RatFunc RatFunc::derivative() const {
    if (den_.degree() == 0) return RatFunc(num_.derivative().scaled(den_.lc().inv()), var_);
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_, var_);
}

RatFunc RatFunc::scale_var(const CycScalar& s) const {
    return RatFunc(num_.scale_var(s), den_.scale_var(s), var_);
}

std::string RatFunc::str() const {
    if (den_.degree() == 0) return poly_str(num_, var_);
    std::string n = poly_str(num_, var_), d = poly_str(den_, var_);
    bool nsimple = num_.degree() == 0 || (num_.coeffs().size() > 0 && n.find(' ') == std::string::npos);
    bool dsimple = d.find(' ') == std::string::npos && d.find('*') == std::string::npos;
    return (nsimple ? n : "(" + n + ")") + "/" + (dsimple ? d : "(" + d + ")");
}

std::optional<int> poly_sector(const CPoly& p, int m) {
    std::optional<int> s;
    for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k).is_zero()) continue;
        int r = k % m;
        if (!s) s = r;
        else if (*s != r) return std::nullopt;
    }
    return s ? s : std::optional<int>(0);
}

CPoly sector_part(const CPoly& p, int r, int m) {
    std::vector<CycScalar> v(std::max(0, p.degree() + 1));
    for (int k = 0; k <= p.degree(); ++k)
        if (((k - r) % m + m) % m == 0) v[k] = p.coeff(k);
    return CPoly(std::move(v));
}

RatFunc sector_project(const RatFunc& f, int r, int m) {
    if (m <= 1 || f.is_zero()) return f;
    r = ((r % m) + m) % m;
    auto ds = poly_sector(f.den(), m);
    if (ds) return RatFunc(sector_part(f.num(), r + *ds, m), f.den(), f.var());
    RatFunc acc(CycScalar(0), f.var());
    for (int j = 0; j < m; ++j) {
        CycScalar z = CycScalar::zeta(m, j);
        acc += f.scale_var(z).scaled(CycScalar::zeta(m, -static_cast<long>(j) * r));
    }
    return acc.scaled(CycScalar(Rational(1, m), m));
}

std::optional<int> sector_of(const RatFunc& f, int m) {
    if (m <= 1 || f.is_zero()) return 0;
    auto ns = poly_sector(f.num(), m), ds = poly_sector(f.den(), m);
    if (!ns || !ds) return std::nullopt;
    return ((*ns - *ds) % m + m) % m;
}

std::pair<CPoly, RatFunc> poly_part(const RatFunc& f) {
    if (f.is_poly()) return {f.num().scaled(f.den().lc().inv()), RatFunc(CycScalar(0), f.var())};
    auto [q, r] = divmod(f.num(), f.den());
    return {q, RatFunc(r, f.den(), f.var())};
}

std::vector<CycScalar> series_at_zero(const RatFunc& f, int count) {
    const CPoly& n = f.num();
    const CPoly& d = f.den();
    if (d.coeff(0).is_zero()) throw DivisionByZero("series at zero: pole at zero");
    CycScalar inv0 = d.coeff(0).inv();
    std::vector<CycScalar> s(count);
    for (int i = 0; i < count; ++i) {
        CycScalar acc = n.coeff(i);
        for (int j = 1; j <= std::min(i, d.degree()); ++j) acc -= d.coeff(j) * s[i - j];
        s[i] = acc * inv0;
    }
    return s;
}

std::map<int, CycScalar> laurent_at_infinity(const RatFunc& f, int lowest) {
    std::map<int, CycScalar> out;
    auto [q, pr] = poly_part(f);
    for (int k = 0; k <= q.degree(); ++k)
        if (!q.coeff(k).is_zero() && k >= lowest) out[k] = q.coeff(k);
    if (pr.is_zero() || lowest >= 0) return out;
    const CPoly& r = pr.num();
    const CPoly& d = pr.den();
    int kshift = d.degree() - r.degree();
    std::vector<CycScalar> rr(r.coeffs().rbegin(), r.coeffs().rend());
    std::vector<CycScalar> dr(d.coeffs().rbegin(), d.coeffs().rend());
    int count = -lowest - kshift + 1;
    if (count <= 0) return out;
    auto s = series_at_zero(RatFunc(CPoly(rr), CPoly(dr), f.var()), count);
    for (int i = 0; i < count; ++i)
        if (!s[i].is_zero()) out[-kshift - i] = s[i];
    return out;
}

}  // namespace kq
