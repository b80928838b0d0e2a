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

#include <string>
#include <utility>
#include <vector>

#include "kq/ideals.hpp"

namespace kq {

// Element of K_0(Gamma) = Z^m in the basis [W_0], ..., [W_{m-1}].
struct KClass {
    std::vector<long> comps;

    int m() const { return static_cast<int>(comps.size()); }
    long dim() const;
    static KClass delta(int m, int n);
    // [L] = [W_1] + [W_{m-1}]
    static KClass L(int m);
    friend KClass operator+(const KClass& a, const KClass& b);
    friend KClass operator-(const KClass& a, const KClass& b);
    // cyclic convolution, [W_a][W_b] = [W_{a+b}]
    friend KClass operator*(const KClass& a, const KClass& b);
    friend bool operator==(const KClass& a, const KClass& b) { return a.comps == b.comps; }
    std::string str() const;
};

// v (2[W_0] - [L]): out_i = 2 v_i - v_{i-1} - v_{i+1}
KClass class_equation(const KClass& v);

struct Decomposition {
    int n = 0;
    std::vector<long> v;  // nonnegative, min 0; empty for m = 1
};
// p = [W_n] - class_equation(v); NotDimOneFamilyError when no such (n, v).
Decomposition decompose(const KClass& p);
KClass recompose(int m, const Decomposition& d);

// [W_n] + [V]([L] - 2[W_0]) with V the graded quotient of the distinguished representative
KClass class_of_ideal(const FractionalIdeal& I);

}  // namespace kq
