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

#include "kq/dgmodel.hpp"
#include "kq/localization.hpp"

namespace kq {

/*
   Transition elements of a point. Internal characteristic polynomials are
   chi_X(x) = det(x - X), chi_Y(y) = det(y - Y), both monic; the resolvents
   (X - x)^{-1} = -adj(x - X) / chi_X(x) carry the signs.
*/
struct KappaMu {
    enum class Kind { Kappa, Mu };
    Kind kind = Kind::Kappa;
    QuiverPoint point;
    // kappa: -lambda_{kl} at y^{-l-1} x^{-k-1}; mu: j X^k Y^l i at x^{-k-1} y^{-l-1}
    std::map<std::pair<int, int>, CycScalar> coeffs;
    int bound = 0;
};

KappaMu kappa(const QuiverPoint& p, int bound = -1);
KappaMu mu(const QuiverPoint& p, int bound = -1);

// e_n kappa = e_n chi_Y^{-1} (chi_Y(y) - sum y^u x^v j B_u A_v i / chi_X(x))
MixedYX kappa_resolvent(const QuiverPoint& p);
// e_n mu chi_Y(y), polynomial in y with rational coefficients in x
LocElemX mu_times_chi_y(const QuiverPoint& p);
// e_n kappa chi_X(x), polynomial in x with rational coefficients in y
LocElemY kappa_times_chi_x(const QuiverPoint& p);
// truncated series: kappa in YX order, mu in XY order, exponents >= -order - 1
LaurentElem kappa_series(const QuiverPoint& p, int order);
LaurentElem mu_series(const QuiverPoint& p, int order);
// kappa series times mu series, exact for exponents >= -order
LaurentElem kappa_mu_series_product(const QuiverPoint& p, int order);

// x' = y, y' = x: X' = Y, Y' = X, i' = i, j' = -j, block b' = -b, n' = -n.
QuiverPoint mirror_point(const QuiverPoint& p);
// v' = P v for the reordered basis of the mirror point
ExactMatrix mirror_permutation(const QuiverPoint& p);

struct KappaMuReport {
    bool kappa_mu_resolvent = false;
    bool mu_kappa_resolvent = false;
    bool support = false;  // e_n kappa (1 - e_n) = 0 and its mirror
    bool kappa_mu_series = false;
    bool mu_kappa_series = false;
    bool series_matches_resolvent = false;
    bool ok() const {
        return kappa_mu_resolvent && mu_kappa_resolvent && support && kappa_mu_series && mu_kappa_series &&
               series_matches_resolvent;
    }
};
// order defaults to 2N + 4
KappaMuReport check_kappa_mu(const QuiverPoint& p, int order = -1);

// Delta_x^{kl}(v) = -sum_{s<l} [j (X - x)^{-1} Y^{l-1-s} X^k v](x) y^s
LocElemX delta_x(const QuiverPoint& p, const ExactMatrix& v, int k, int l);
// y-side: the mirror image, indexed by the YX monomial y^k x^l
LocElemY delta_y(const QuiverPoint& p, const ExactMatrix& v, int k, int l);
// v . b for b in B acting on U from the right (x -> X, y -> Y, e_i -> block projector)
ExactMatrix act_on_vector(const QuiverPoint& p, const ExactMatrix& v, const AlgElem& b);
// f_2(v, b), linear in b, from the closed form on PBW monomials
LocElemX f2_x(const QuiverPoint& p, const ExactMatrix& v, const AlgElem& b);
LocElemY f2_y(const QuiverPoint& p, const ExactMatrix& v, const AlgElem& b);
// f_2(v, a_1 ... a_r) letter by letter: f_2(v, w a) = f_2(v, w) a + f_2(v.w, a)
LocElemX f2_x_word(const QuiverPoint& p, const ExactMatrix& v, const std::vector<Letter>& word);
// f_2(v, ab) - f_2(v, a) b - f_2(v.a, b)
LocElemX cocycle_defect_x(const QuiverPoint& p, const ExactMatrix& v, const AlgElem& a, const AlgElem& b);
LocElemY cocycle_defect_y(const QuiverPoint& p, const ExactMatrix& v, const AlgElem& a, const AlgElem& b);
/*
   U is not a B-module (v . (yx - xy + tau) = i j(v)), so the defects are
   basepoint terms i_x . c, represented as e_n c + f_2(i, c). Returns c (the
   polynomial part of d) when d has exactly this form.
*/
std::optional<PolyRow> basepoint_part(const QuiverPoint& p, const LocElemX& d);
std::optional<PolyRow> basepoint_part_y(const QuiverPoint& p, const LocElemY& d);

// phi(e_n b) = rho_y rho_x (e_n kappa b); phi^{-1}(e_n b) = rho_x rho_y (e_n mu b).
AlgElem phi_apply(const AlgElem& b, const KappaMu& k);
AlgElem phi_inverse(const AlgElem& b, const KappaMu& m);

}  // namespace kq
