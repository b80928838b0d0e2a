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
#include "kq/ktheory.hpp"

#include <algorithm>
#include <numeric>

namespace kq {

namespace {

void same_m(const KClass& a, const KClass& b) {
    if (a.m() != b.m()) throw ShapeError("K-classes of different rank");
}

long mod(long i, int m) { return ((i % m) + m) % m; }

}  // namespace

long KClass::dim() const { return std::accumulate(comps.begin(), comps.end(), 0L); }

KClass KClass::delta(int m, int n) {
    KClass c{std::vector<long>(m, 0)};
    c.comps[mod(n, m)] = 1;
    return c;
}

KClass KClass::L(int m) {
    KClass c{std::vector<long>(m, 0)};
    c.comps[mod(1, m)] += 1;
    c.comps[mod(-1, m)] += 1;
    return c;
}

KClass operator+(const KClass& a, const KClass& b) {
    same_m(a, b);
    KClass c = a;
    for (int i = 0; i < a.m(); ++i) c.comps[i] += b.comps[i];
    return c;
}

KClass operator-(const KClass& a, const KClass& b) {
    same_m(a, b);
    KClass c = a;
    for (int i = 0; i < a.m(); ++i) c.comps[i] -= b.comps[i];
    return c;
}

KClass operator*(const KClass& a, const KClass& b) {
    same_m(a, b);
    const int m = a.m();
    KClass c{std::vector<long>(m, 0)};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) c.comps[(i + j) % m] += a.comps[i] * b.comps[j];
    return c;
}

std::string KClass::str() const {
    std::string s;
    for (int i = 0; i < m(); ++i) {
        if (i) s += " + ";
        s += std::to_string(comps[i]) + "[W" + std::to_string(i) + "]";
    }
    return s;
}

KClass class_equation(const KClass& v) {
    const int m = v.m();
    KClass out{std::vector<long>(m, 0)};
    for (int i = 0; i < m; ++i) out.comps[i] = 2 * v.comps[i] - v.comps[mod(i - 1, m)] - v.comps[mod(i + 1, m)];
    return out;
}

Decomposition decompose(const KClass& p) {
    const int m = p.m();
    if (m == 0) throw ShapeError("empty K-class");
    if (p.dim() != 1) throw NotDimOneFamilyError("class has dimension " + std::to_string(p.dim()));
    Decomposition d;
    long s = 0;
    for (int i = 0; i < m; ++i) s += i * p.comps[i];
    d.n = static_cast<int>(mod(s, m));
    if (m == 1) return d;
    // class_equation(v) = c with v_0 = 0: v_{i+1} = 2 v_i - v_{i-1} - c_i, v_1 = t.
    // Walking around the cycle, v_i = a_i + i t; closing at v_m = v_0 fixes t.
    KClass c = KClass::delta(m, d.n) - p;
    std::vector<long> a(m + 1, 0);
    a[0] = 0;
    a[1] = 0;
    for (int i = 1; i < m; ++i) a[i + 1] = 2 * a[i] - a[i - 1] - c.comps[i];
    // v_m = a_m + m t must equal v_0 = 0
    if (a[m] % m != 0) throw NotDimOneFamilyError("no integral preimage");
    const long t = -a[m] / m;
    std::vector<long> v(m);
    for (int i = 0; i < m; ++i) v[i] = a[i] + i * t;
    const long lo = *std::min_element(v.begin(), v.end());
    for (auto& x : v) x -= lo;
    d.v = v;
    if (!(recompose(m, d) == p)) throw NotDimOneFamilyError("no preimage");
    return d;
}

KClass recompose(int m, const Decomposition& d) {
    KClass v{d.v.empty() ? std::vector<long>(m, 0) : d.v};
    if (v.m() != m) throw ShapeError("recompose: wrong length");
    return KClass::delta(m, d.n) - class_equation(v);
}

KClass class_of_ideal(const FractionalIdeal& I) {
    const auto& nz = I.normalization();
    const int m = I.ctx()->m();
    std::vector<long> v;
    for (int k : nz.grade_dims()) v.push_back(k);
    return KClass::delta(m, nz.n()) - class_equation(KClass{v});
}

}  // namespace kq
