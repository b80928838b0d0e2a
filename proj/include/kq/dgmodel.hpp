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
#include <vector>

#include "kq/quiver.hpp"

namespace kq {

// lambda_{kl} = j Y^l X^k i for 0 <= k, l <= bound; zeros not stored.
struct LambdaTable {
    enum class Source { Point, Solved };
    Ctx ctx;
    int n = 0;
    int bound = 0;
    std::map<std::pair<int, int>, CycScalar> values;
    Source source = Source::Point;

    CycScalar at(int k, int l) const;  // BoundError outside the table
    friend bool operator==(const LambdaTable& a, const LambdaTable& b) {
        return a.n == b.n && a.values == b.values && *a.ctx == *b.ctx;
    }
};

int default_lambda_bound(int N);  // 2N + 4
LambdaTable build_lambda(const QuiverPoint& p, int bound = -1);
// Same table restricted to k, l <= bound.
LambdaTable truncate(const LambdaTable& t, int bound);

// Element of L0 in the basis (k, l) = i_n x^k y^l.
class L0Element {
  public:
    using Key = std::pair<int, int>;
    L0Element() = default;
    static L0Element basis(int k, int l);
    const std::map<Key, CycScalar>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    CycScalar coeff(int k, int l) const;
    void add(int k, int l, const CycScalar& c);
    L0Element& operator+=(const L0Element& o);
    L0Element& operator-=(const L0Element& o);
    friend L0Element operator+(L0Element a, const L0Element& b) { return a += b; }
    friend L0Element operator-(L0Element a, const L0Element& b) { return a -= b; }
    L0Element scaled(const CycScalar& s) const;
    friend bool operator==(const L0Element& a, const L0Element& b) { return a.c_ == b.c_; }
    std::string str() const;

  private:
    std::map<Key, CycScalar> c_;
};

// Right action of x, y or e_i on L0 = W (x) R / J.
L0Element l0_act(const L0Element& v, const Letter& gen, const LambdaTable& lam);
L0Element l0_act_word(const L0Element& v, const std::vector<Letter>& word, const LambdaTable& lam);
// lambda extended linearly: sum c_{kl} lambda_{kl}
CycScalar lambda_of(const L0Element& v, const LambdaTable& lam);

struct DGModel {
    LambdaTable lambda;
    QuiverPoint point;
};

// bound defaults to max(2N + 4, 8) so that check_axioms' default window fits
DGModel build_model(const QuiverPoint& p, int bound = -1);
// d_L: (k, l) -> Y^l X^k i
ExactMatrix dL_apply(const L0Element& v, const QuiverPoint& p);
// v . nu = i(j(v)), an element of the span of (0, 0)
L0Element nu_apply(const ExactMatrix& u, const DGModel& model);
// Violated axioms on the basis window k, l <= window; genericity notes prefixed "warning:".
std::vector<std::string> check_axioms(const DGModel& model, int window = 6);
bool h0_membership(const L0Element& v, const DGModel& model);
// Basis of Ker d_L inside span{(k, l) : k, l <= window}.
std::vector<L0Element> kernel_window(const DGModel& model, int window);

// Nakajima data from lambda: L0 modulo the radical of (v, w) -> lambda(v . w).
QuiverPoint point_from_lambda(const LambdaTable& lam);

}  // namespace kq
