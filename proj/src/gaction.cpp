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
#include "kq/gaction.hpp"

#include <algorithm>

namespace kq {

// ----------------------------------------------------------------- NCPoly

NCPoly NCPoly::letter(char c) {
    NCPoly p;
    p.t_[std::string(1, c)] = CycScalar(1);
    return p;
}

NCPoly NCPoly::constant(const CycScalar& c) {
    NCPoly p;
    if (!c.is_zero()) p.t_[""] = c;
    return p;
}

NCPoly NCPoly::poly_in(char var, const CPoly& f) {
    NCPoly p;
    for (int k = 0; k <= f.degree(); ++k)
        if (!f.coeff(k).is_zero()) p.t_[std::string(k, var)] = f.coeff(k);
    return p;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.t_) {
        auto it = t_.find(w);
        if (it == t_.end()) {
            t_.emplace(w, c);
            continue;
        }
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
    return *this;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly r;
    for (const auto& [u, c] : a.t_)
        for (const auto& [v, d] : b.t_) {
            NCPoly t;
            t.t_[u + v] = c * d;
            r += t;
        }
    return r;
}

NCPoly NCPoly::scaled(const CycScalar& c) const {
    if (c.is_zero()) return {};
    NCPoly r = *this;
    for (auto& [w, v] : r.t_) v *= c;
    return r;
}

NCPoly NCPoly::substitute(const NCPoly& a, const NCPoly& b) const {
    NCPoly r;
    for (const auto& [w, c] : t_) {
        NCPoly t = constant(c);
        for (char ch : w) t = t * (ch == 'x' ? a : b);
        r += t;
    }
    return r;
}

FreeSum NCPoly::to_free() const {
    std::vector<FreeWord> ws;
    for (const auto& [w, c] : t_) {
        FreeWord f;
        f.coef = c;
        for (char ch : w) f.letters.push_back(Letter{ch == 'x' ? Letter::X : Letter::Y, 0});
        ws.push_back(std::move(f));
    }
    return FreeSum(std::move(ws));
}

std::string NCPoly::str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : t_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")";
        if (!w.empty()) s += "*" + w;
    }
    return s;
}

// ----------------------------------------------------------------- automorphisms

Automorphism Automorphism::shear_x(const CPoly& q) { return {{Move{Move::Kind::ShearX, q, CycScalar(1)}}}; }
Automorphism Automorphism::shear_y(const CPoly& p) { return {{Move{Move::Kind::ShearY, p, CycScalar(1)}}}; }
Automorphism Automorphism::scale(const CycScalar& c) { return {{Move{Move::Kind::Scale, CPoly(), c}}}; }

Automorphism compose(const Automorphism& a, const Automorphism& b) {
    Automorphism r = a;
    r.moves.insert(r.moves.end(), b.moves.begin(), b.moves.end());
    return r;
}

std::string Automorphism::str() const {
    if (moves.empty()) return "id";
    std::string s;
    for (const auto& mv : moves) {
        if (!s.empty()) s += " o ";
        switch (mv.kind) {
            case Move::Kind::ShearX: s += "shearX(" + poly_str(mv.poly, 'y') + ")"; break;
            case Move::Kind::ShearY: s += "shearY(" + poly_str(mv.poly, 'x') + ")"; break;
            case Move::Kind::Scale: s += "scale(" + mv.c.str() + ")"; break;
        }
    }
    return s;
}

std::pair<NCPoly, NCPoly> images(const Automorphism& s) {
    // (A o m)(x) = m(x)[x -> A(x), y -> A(y)]
    NCPoly ax = NCPoly::letter('x'), ay = NCPoly::letter('y');
    for (const auto& mv : s.moves) {
        switch (mv.kind) {
            case Move::Kind::ShearX: ax = ax + NCPoly::poly_in('y', mv.poly).substitute(ax, ay); break;
            case Move::Kind::ShearY: ay = ay + NCPoly::poly_in('x', mv.poly).substitute(ax, ay); break;
            case Move::Kind::Scale:
                if (mv.c.is_zero()) throw DivisionByZero("scale by zero");
                ax = ax.scaled(mv.c);
                ay = ay.scaled(mv.c.inv());
                break;
        }
    }
    return {ax, ay};
}

std::vector<std::string> validate_automorphism(const Automorphism& s, int m) {
    std::vector<std::string> out;
    for (size_t t = 0; t < s.moves.size(); ++t) {
        const auto& mv = s.moves[t];
        const std::string at = "move " + std::to_string(t) + ": ";
        if (mv.kind == Move::Kind::Scale) {
            if (mv.c.is_zero()) out.push_back(at + "scale by zero");
            continue;
        }
        for (int k = 0; k <= mv.poly.degree(); ++k)
            if (!mv.poly.coeff(k).is_zero() && (k + 1) % m != 0)
                out.push_back(at + "exponent " + std::to_string(k) + " is not -1 mod " + std::to_string(m));
    }
    if (!out.empty()) return out;
    auto [ax, ay] = images(s);
    NCPoly omega = NCPoly::letter('x') * NCPoly::letter('y') - NCPoly::letter('y') * NCPoly::letter('x');
    if (!(ax * ay - ay * ax == omega)) out.push_back("commutator of the images is not xy - yx");
    return out;
}

Automorphism invert(const Automorphism& s) {
    Automorphism r;
    for (auto it = s.moves.rbegin(); it != s.moves.rend(); ++it) {
        Move mv = *it;
        if (mv.kind == Move::Kind::Scale) mv.c = mv.c.inv();
        else mv.poly = -mv.poly;
        r.moves.push_back(mv);
    }
    return r;
}

AlgElem apply(const Automorphism& s, const AlgElem& a) {
    const Ctx& ctx = a.ctx();
    auto [ix, iy] = images(s);
    AlgElem sx = to_alg(ctx, ix.to_free()), sy = to_alg(ctx, iy.to_free());
    std::map<int, AlgElem> px, py;
    auto pw = [&](std::map<int, AlgElem>& cache, const AlgElem& b, int k) -> const AlgElem& {
        auto it = cache.find(k);
        if (it == cache.end()) it = cache.emplace(k, power(b, k)).first;
        return it->second;
    };
    AlgElem out(ctx);
    for (const auto& [key, c] : a.terms())
        out += multiply(multiply(pw(px, sx, key.first), pw(py, sy, key.second)), AlgElem::group(ctx, c));
    return out;
}

QuiverPoint act_on_point(const Automorphism& s, const QuiverPoint& p) {
    auto bad = validate_automorphism(s, p.ctx->m());
    if (!bad.empty()) throw ValidationError("automorphism: " + bad.front());
    auto [ix, iy] = images(invert(s));
    QuiverPoint q = p;
    q.X = eval_word(ix.to_free(), p);
    q.Y = eval_word(iy.to_free(), p);
    auto rep = validate_point(q);
    if (!rep.empty()) throw ValidationError("act_on_point: " + rep.front());
    return q;
}

FractionalIdeal act_on_ideal(const Automorphism& s, const FractionalIdeal& I) {
    auto bad = validate_automorphism(s, I.ctx()->m());
    if (!bad.empty()) throw ValidationError("automorphism: " + bad.front());
    auto pg = polynomial_generators(I);
    std::vector<FractionalIdeal::Gen> gens;
    for (const auto& g : pg.gens) gens.push_back(apply(s, g.left_mul_e(pg.n)));
    FractionalIdeal out(I.ctx(), pg.n, std::move(gens));
    out.warnings = I.warnings;
    return out;
}

bool equivariance_check(const Automorphism& s, const QuiverPoint& p) {
    return isomorphic_ideals(act_on_ideal(s, build_ideal_My(p)), build_ideal_My(act_on_point(s, p)));
}

}  // namespace kq
