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
#include <mutex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kq/dgmodel.hpp"
#include "kq/kappa.hpp"

namespace kq {

// p_0, p_1, ... monic, p_{k+1} | p_k, constant from stab_index on.
struct GradedLadder {
    int n = 0;
    std::vector<CPoly> chain;
    int stab_index = 0;
};

/*
   Right ideal I of e_b B (all coefficients polynomial) with a y-graded
   standard basis h_0..h_D: deg_y h_d = d, lc(h_d) = q_d monic, q_{d+1} | q_d,
   h_d = h_D y^{d-D} beyond D. Every element of I is sum h_d c_d(x).
*/
struct StandardBasis {
    Ctx ctx;
    int n = 0;
    std::vector<PolyRow> h;
    std::vector<CPoly> q;
    int D() const { return static_cast<int>(h.size()) - 1; }
};

// Honest generators in e_n B; the ideal needs J_0 != 0 (some h_0 in C[x]).
StandardBasis standard_basis(const Ctx& ctx, int n, const std::vector<PolyRow>& gens);
// Reduction modulo the standard basis; zero iff the row is a member.
PolyRow reduce(const StandardBasis& sb, const PolyRow& f);

class Normalization;

/*
   A right submodule of a localization of B, by generators. AlgElem generators
   mean e_n * a. Mixed x- and y-localized generators are not supported.
*/
class FractionalIdeal {
  public:
    using Gen = std::variant<LocElemX, LocElemY, AlgElem>;
    FractionalIdeal() = default;
    FractionalIdeal(Ctx ctx, int n, std::vector<Gen> gens);

    const Ctx& ctx() const { return ctx_; }
    int n() const { return n_; }
    const std::vector<Gen>& gens() const { return gens_; }
    std::vector<std::string> warnings;

    // distinguished representative and its quotient; computed once
    const Normalization& normalization() const;
    // point whose quotient reproduces the ideal; j lives on the standard monomials
    const QuiverPoint& theta_point() const;

  private:
    Ctx ctx_;
    int n_ = 0;
    std::vector<Gen> gens_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

/*
   I ~ M_x in e_n B_x with M_x monic in y and M_x cap e_n C[x] != 0; M_x is
   unique up to scalar. V = e_n B / rho_x(M_x) has the standard monomials
   x^k y^d, k < deg ladder_d, as basis. Built from the honest ideal
   p(x) M_x with p = stable ladder polynomial.
*/
class Normalization {
  public:
    Normalization(StandardBasis sb, std::vector<PolyRow> honest);

    int n() const { return n_; }
    const CPoly& p() const { return p_; }
    const StandardBasis& basis() const { return sb_; }
    const std::vector<PolyRow>& honest_generators() const { return honest_; }
    GradedLadder ladder() const;
    int N() const { return static_cast<int>(mono_.size()); }
    // standard monomials (k, d), ordered by grade n - k + d, then d, then k
    const std::vector<std::pair<int, int>>& standard_monomials() const { return mono_; }
    int grade(int k, int d) const;
    std::vector<int> grade_dims() const;

    // rho_x(p^{-1} h_d x^a): spans rho_x(M_x)
    const PolyRow& kernel_element(int d, int a) const;
    // coordinates of e_n f modulo rho_x(M_x) on the standard monomials
    ExactMatrix coords(const PolyRow& f) const;
    bool in_kernel(const PolyRow& f) const;

  private:
    StandardBasis sb_;
    std::vector<PolyRow> honest_;
    CPoly p_;
    int n_ = 0;
    std::vector<CPoly> ladder_;  // q_d / p
    std::vector<std::pair<int, int>> mono_;
    std::map<std::pair<int, int>, int> index_;
    mutable std::map<std::pair<int, int>, PolyRow> psi_;
    mutable std::map<std::pair<int, int>, PolyRow> raw_;
    mutable std::mutex mu_;
};

FractionalIdeal build_ideal_My(const QuiverPoint& p);
FractionalIdeal build_ideal_Mx(const QuiverPoint& p);
// x <-> y image; LocElemX <-> LocElemY
FractionalIdeal mirror_ideal(const FractionalIdeal& I);

struct PolynomialGenerators {
    int n = 0;
    std::vector<AlgElem> gens;  // elements of e_n B
};
// Honest right ideal isomorphic to I (left multiplication by units of the localization).
PolynomialGenerators polynomial_generators(const FractionalIdeal& I);
GradedLadder gr_y_ladder(const FractionalIdeal& I);

QuiverPoint theta1(const FractionalIdeal& I);
// bound < 0: 2N + 4
LambdaTable transition_lambda(const FractionalIdeal& I, int bound = -1);
bool isomorphic_ideals(const FractionalIdeal& a, const FractionalIdeal& b);

// Basis of rho_x(M_x) inside span{x^k y^l : k, l <= window} (L0 coordinates).
std::vector<L0Element> kernel_window_x(const FractionalIdeal& I, int window);
// Same for rho_y(M_y) in YX coordinates: (k, l) stands for e_n y^k x^l.
std::vector<L0Element> kernel_window_y(const FractionalIdeal& I, int window);

}  // namespace kq
