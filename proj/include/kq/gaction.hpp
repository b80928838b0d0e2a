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

#include "kq/ideals.hpp"

namespace kq {

// Noncommutative polynomial in x, y; words are strings over {'x', 'y'}.
class NCPoly {
  public:
    NCPoly() = default;
    static NCPoly letter(char c);
    static NCPoly constant(const CycScalar& c);
    static NCPoly poly_in(char var, const CPoly& p);

    const std::map<std::string, CycScalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    NCPoly& operator+=(const NCPoly& o);
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a += b.scaled(CycScalar(-1)); }
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
    NCPoly scaled(const CycScalar& c) const;
    // substitute x -> a, y -> b
    NCPoly substitute(const NCPoly& a, const NCPoly& b) const;
    FreeSum to_free() const;
    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.t_ == b.t_; }
    std::string str() const;

  private:
    std::map<std::string, CycScalar> t_;
};

/*
   Elementary moves, all fixing Gamma:
   ShearX(q): x -> x + q(y), ShearY(p): y -> y + p(x), Scale(c): x -> c x, y -> y / c.
*/
struct Move {
    enum class Kind { ShearX, ShearY, Scale };
    Kind kind = Kind::Scale;
    CPoly poly;           // q(y) or p(x)
    CycScalar c{1};       // Scale only
};

// sigma = moves[0] o moves[1] o ... (the last move is applied to the generators first)
struct Automorphism {
    std::vector<Move> moves;

    static Automorphism identity() { return {}; }
    static Automorphism shear_x(const CPoly& q);
    static Automorphism shear_y(const CPoly& p);
    static Automorphism scale(const CycScalar& c);
    friend Automorphism compose(const Automorphism& a, const Automorphism& b);  // a o b
    std::string str() const;
};

// (sigma(x), sigma(y))
std::pair<NCPoly, NCPoly> images(const Automorphism& s);
// Empty iff valid for the cyclic group of order m: shear exponents = -1 mod m,
// nonzero scales, [sigma(x), sigma(y)] = [x, y] in the free algebra.
std::vector<std::string> validate_automorphism(const Automorphism& s, int m);
Automorphism invert(const Automorphism& s);

// sigma applied to an element of B (an algebra automorphism of B)
AlgElem apply(const Automorphism& s, const AlgElem& a);
// (sigma^{-1}(X), sigma^{-1}(Y), i, j)
QuiverPoint act_on_point(const Automorphism& s, const QuiverPoint& p);
// right ideal generated by sigma of the polynomial generators
FractionalIdeal act_on_ideal(const Automorphism& s, const FractionalIdeal& I);
bool equivariance_check(const Automorphism& s, const QuiverPoint& p);

}  // namespace kq
