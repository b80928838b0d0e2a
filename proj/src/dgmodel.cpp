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
#include "kq/dgmodel.hpp"

#include <algorithm>
#include <sstream>

namespace kq {

// ---------------------------------------------------------------- lambda

CycScalar LambdaTable::at(int k, int l) const {
    if (k < 0 || l < 0) throw ShapeError("negative lambda index");
    if (k > bound || l > bound)
        throw BoundError("lambda(" + std::to_string(k) + "," + std::to_string(l) + ") outside table bound " + std::to_string(bound));
    auto it = values.find({k, l});
    return it == values.end() ? CycScalar(Rational(0), ctx->m()) : it->second;
}

int default_lambda_bound(int N) { return 2 * N + 4; }

LambdaTable build_lambda(const QuiverPoint& p, int bound) {
    auto rep = validate_point(p);
    if (!rep.empty()) throw ValidationError(rep.front());
    if (!check_stability(p)) throw StabilityError("build_lambda: unstable point");
    LambdaTable t;
    t.ctx = p.ctx;
    t.n = p.n;
    t.bound = bound < 0 ? default_lambda_bound(p.N()) : bound;
    t.source = LambdaTable::Source::Point;
    if (p.N() == 0) return t;
    ExactMatrix u = p.i;
    for (int k = 0; k <= t.bound; ++k) {
        ExactMatrix w = u;
        for (int l = 0; l <= t.bound; ++l) {
            CycScalar v = matmul<CycScalar>(p.j, w)(0, 0);
            if (!v.is_zero()) t.values[{k, l}] = v;
            w = matmul<CycScalar>(p.Y, w);
        }
        u = matmul<CycScalar>(p.X, u);
    }
    return t;
}

LambdaTable truncate(const LambdaTable& t, int bound) {
    LambdaTable r = t;
    r.bound = std::min(bound, t.bound);
    r.values.clear();
    for (const auto& [key, v] : t.values)
        if (key.first <= r.bound && key.second <= r.bound) r.values[key] = v;
    return r;
}

// ---------------------------------------------------------------- L0

L0Element L0Element::basis(int k, int l) {
    L0Element v;
    v.c_[{k, l}] = CycScalar(1);
    return v;
}

CycScalar L0Element::coeff(int k, int l) const {
    auto it = c_.find({k, l});
    return it == c_.end() ? CycScalar(0) : it->second;
}

void L0Element::add(int k, int l, const CycScalar& c) {
    if (c.is_zero()) return;
    auto [it, ins] = c_.try_emplace({k, l}, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

L0Element& L0Element::operator+=(const L0Element& o) {
    for (const auto& [key, c] : o.c_) add(key.first, key.second, c);
    return *this;
}
L0Element& L0Element::operator-=(const L0Element& o) {
    for (const auto& [key, c] : o.c_) add(key.first, key.second, -c);
    return *this;
}
L0Element L0Element::scaled(const CycScalar& s) const {
    L0Element r;
    if (s.is_zero()) return r;
    for (const auto& [key, c] : c_) r.c_[key] = c * s;
    return r;
}

std::string L0Element::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : c_) {
        os << (first ? "" : " + ") << c.str() << "*(" << key.first << "," << key.second << ")";
        first = false;
    }
    return os.str();
}

namespace {

int grade(const LambdaTable& lam, int k, int l) { return lam.ctx->mod(static_cast<long>(lam.n) + l - k); }

// (k, l) . x = (k+1, l) - sigma (k, l-1) + sum_{s<l} lambda_{ks} (0, l-1-s),
// sigma = sum_{s<l} tau_{n+s-k}: the recursion (k,l).x = ((k,l-1).x).y - tau (k,l-1) + lambda_{k,l-1} (0,0) unrolled.
void add_x_image(L0Element& out, int k, int l, const CycScalar& c, const LambdaTable& lam) {
    out.add(k + 1, l, c);
    if (l == 0) return;
    CycScalar sigma(Rational(0), lam.ctx->m());
    for (int s = 0; s < l; ++s) {
        sigma += lam.ctx->tau_at(static_cast<long>(lam.n) + s - k);
        CycScalar v = lam.at(k, s);
        if (!v.is_zero()) out.add(0, l - 1 - s, c * v);
    }
    out.add(k, l - 1, -(c * sigma));
}

}  // namespace

L0Element l0_act(const L0Element& v, const Letter& gen, const LambdaTable& lam) {
    L0Element out;
    for (const auto& [key, c] : v.terms()) {
        auto [k, l] = key;
        switch (gen.kind) {
            case Letter::X: add_x_image(out, k, l, c, lam); break;
            case Letter::Y: out.add(k, l + 1, c); break;
            case Letter::E:
                if (grade(lam, k, l) == lam.ctx->mod(gen.idx)) out.add(k, l, c);
                break;
        }
    }
    return out;
}

L0Element l0_act_word(const L0Element& v, const std::vector<Letter>& word, const LambdaTable& lam) {
    L0Element r = v;
    for (const auto& g : word) r = l0_act(r, g, lam);
    return r;
}

CycScalar lambda_of(const L0Element& v, const LambdaTable& lam) {
    CycScalar s(Rational(0), lam.ctx->m());
    for (const auto& [key, c] : v.terms()) s += c * lam.at(key.first, key.second);
    return s;
}

// ---------------------------------------------------------------- model

DGModel build_model(const QuiverPoint& p, int bound) {
    if (bound < 0) bound = std::max(default_lambda_bound(p.N()), 8);
    return DGModel{build_lambda(p, bound), p};
}

ExactMatrix dL_apply(const L0Element& v, const QuiverPoint& p) {
    ExactMatrix out = zeros<CycScalar>(p.N(), 1);
    if (v.is_zero() || p.N() == 0) return out;
    int kmax = 0;
    for (const auto& [key, c] : v.terms()) kmax = std::max(kmax, key.first);
    std::vector<ExactMatrix> xk{p.i};
    for (int k = 1; k <= kmax; ++k) xk.push_back(matmul<CycScalar>(p.X, xk.back()));
    for (const auto& [key, c] : v.terms()) out += matmul<CycScalar>(matpow<CycScalar>(p.Y, key.second), xk[key.first]) * c;
    return out;
}

L0Element nu_apply(const ExactMatrix& u, const DGModel& model) {
    const auto& p = model.point;
    if (u.rows() != p.N() || u.cols() != 1) throw ShapeError("nu_apply: vector has wrong shape");
    L0Element r;
    if (p.N() == 0) return r;
    r.add(0, 0, matmul<CycScalar>(p.j, u)(0, 0));
    return r;
}

std::vector<std::string> check_axioms(const DGModel& model, int window) {
    std::vector<std::string> rep;
    const auto& p = model.point;
    const auto& lam = model.lambda;
    for (const auto& s : validate_point(p)) rep.push_back("point: " + s);
    const int N = p.N();
    if (p.X.rows() != N || p.X.cols() != N || p.Y.rows() != N || p.Y.cols() != N || p.i.rows() != N || p.j.cols() != N)
        return rep;
    if (!check_stability(p)) rep.push_back("cyclicity: i(W).R is not all of L0 (Krylov span of i is proper)");
    if (lam.n != p.n || !(*lam.ctx == *p.ctx)) rep.push_back("lambda table and point disagree on n or tau");
    if (lam.bound < window) {
        rep.push_back("lambda bound " + std::to_string(lam.bound) + " smaller than window " + std::to_string(window));
        return rep;
    }
    int l1_fail = 0, tw_fail = 0, gr_fail = 0, nu_fail = 0;
    auto note = [&](int& count, const std::string& s) {
        if (count++ < 3) rep.push_back(s);
    };
    const Letter X{Letter::X, 0}, Y{Letter::Y, 0};
    for (int k = 0; k <= window; ++k)
        for (int l = 0; l <= window; ++l) {
            std::string at = " at (" + std::to_string(k) + "," + std::to_string(l) + ")";
            auto v = L0Element::basis(k, l);
            auto vx = l0_act(v, X, lam), vy = l0_act(v, Y, lam);
            auto vyx = l0_act(vy, X, lam), vxy = l0_act(vx, Y, lam);
            int g = grade(lam, k, l);
            ExactMatrix dv = dL_apply(v, p);
            // XY - YX + T = i j on L0, with j = jbar o d_L
            L0Element lhs = vyx - vxy + v.scaled(lam.ctx->tau_at(g));
            L0Element rhs;
            if (p.N() > 0) rhs.add(0, 0, matmul<CycScalar>(p.j, dv)(0, 0));
            if (!(lhs == rhs)) note(l1_fail, "moment identity XY - YX + T = ij fails" + at);
            // nu: d(v.nu) = d(v).nu + v.(xy - yx - tau) = 0 on L0
            L0Element leib = nu_apply(dv, model) + vxy - vyx - v.scaled(lam.ctx->tau_at(g));
            if (!leib.is_zero()) note(nu_fail, "nu axiom: nu is not compatible with d(nu) = xy - yx - tau" + at);
            if (!equal<CycScalar>(dL_apply(vx, p), matmul<CycScalar>(p.X, dv)) ||
                !equal<CycScalar>(dL_apply(vy, p), matmul<CycScalar>(p.Y, dv)))
                note(tw_fail, "d_L does not intertwine x, y" + at);
            for (const auto& [key, c] : vx.terms())
                if (grade(lam, key.first, key.second) != lam.ctx->mod(g - 1)) {
                    note(gr_fail, "grading: (k,l).x leaves grade n+l-k-1" + at);
                    break;
                }
        }
    for (auto [count, what] : {std::pair{l1_fail, "moment identity"}, {nu_fail, "nu axiom"}, {tw_fail, "intertwining"}, {gr_fail, "grading"}})
        if (count > 3) rep.push_back(std::string(what) + ": " + std::to_string(count - 3) + " further failures");
    if (!is_generic(*lam.ctx)) rep.push_back("warning: tau is not generic; projectivity of H0 needs genericity");
    return rep;
}

bool h0_membership(const L0Element& v, const DGModel& model) {
    for (const auto& [key, c] : v.terms())
        if (key.first > model.lambda.bound || key.second > model.lambda.bound)
            throw BoundError("h0_membership: element outside the lambda bound");
    return is_zero(dL_apply(v, model.point));
}

std::vector<L0Element> kernel_window(const DGModel& model, int window) {
    const auto& p = model.point;
    std::vector<std::pair<int, int>> idx;
    for (int k = 0; k <= window; ++k)
        for (int l = 0; l <= window; ++l) idx.push_back({k, l});
    ExactMatrix d = zeros<CycScalar>(p.N(), static_cast<Eigen::Index>(idx.size()));
    for (size_t c = 0; c < idx.size(); ++c) d.col(c) = dL_apply(L0Element::basis(idx[c].first, idx[c].second), p);
    std::vector<L0Element> out;
    if (p.N() == 0) {
        for (auto [k, l] : idx) out.push_back(L0Element::basis(k, l));
        return out;
    }
    ExactMatrix ns = nullspace(d);
    for (Eigen::Index c = 0; c < ns.cols(); ++c) {
        L0Element v;
        for (size_t r = 0; r < idx.size(); ++r) v.add(idx[r].first, idx[r].second, ns(r, c));
        out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------- theta_2

namespace {

// Row of the pairing: lambda((v . x^a) . y^b) for a + b <= D.
std::vector<CycScalar> pairing_row(const L0Element& v, int D, const LambdaTable& lam) {
    std::vector<CycScalar> row;
    L0Element va = v;
    for (int a = 0; a <= D; ++a) {
        for (int b = 0; a + b <= D; ++b) {
            CycScalar s(Rational(0), lam.ctx->m());
            for (const auto& [key, c] : va.terms()) s += c * lam.at(key.first, key.second + b);
            row.push_back(s);
        }
        if (a < D) va = l0_act(va, Letter{Letter::X, 0}, lam);
    }
    return row;
}

struct Hankel {
    std::vector<std::pair<int, int>> basis;  // chosen rows (k, l)
    ExactMatrix rows;                          // their pairing rows
};

Hankel hankel_basis(const LambdaTable& lam, int D) {
    Hankel h;
    std::vector<std::vector<CycScalar>> chosen;
    // incremental echelon over the pairing rows
    std::vector<std::pair<size_t, std::vector<CycScalar>>> ech;
    for (int t = 0; t <= D; ++t)
        for (int k = 0; k <= t; ++k) {
            int l = t - k;
            auto row = pairing_row(L0Element::basis(k, l), D, lam);
            auto w = row;
            for (const auto& [piv, e] : ech)
                if (!w[piv].is_zero()) {
                    CycScalar f = w[piv];
                    for (size_t q = 0; q < w.size(); ++q)
                        if (!e[q].is_zero()) w[q] -= f * e[q];
                }
            size_t piv = w.size();
            for (size_t q = 0; q < w.size(); ++q)
                if (!w[q].is_zero()) {
                    piv = q;
                    break;
                }
            if (piv == w.size()) continue;
            CycScalar inv = w[piv].inv();
            for (auto& c : w) c *= inv;
            for (auto& [q, e] : ech)
                if (!e[piv].is_zero()) {
                    CycScalar f = e[piv];
                    for (size_t r = 0; r < e.size(); ++r)
                        if (!w[r].is_zero()) e[r] -= f * w[r];
                }
            ech.push_back({piv, w});
            h.basis.push_back({k, l});
            chosen.push_back(row);
        }
    const Eigen::Index ncols = chosen.empty() ? 0 : static_cast<Eigen::Index>(chosen.front().size());
    h.rows = ExactMatrix(static_cast<Eigen::Index>(chosen.size()), ncols);
    for (size_t r = 0; r < chosen.size(); ++r)
        for (Eigen::Index c = 0; c < ncols; ++c) h.rows(r, c) = chosen[r][c];
    return h;
}

}  // namespace

QuiverPoint point_from_lambda(const LambdaTable& lam) {
    const int D = (lam.bound - 1) / 2;
    if (D < 1) throw BoundError("point_from_lambda: lambda bound too small");
    Hankel h = hankel_basis(lam, D);
    if (D >= 2 && hankel_basis(lam, D - 1).basis.size() != h.basis.size())
        throw BoundError("point_from_lambda: pairing rank not stable within the lambda bound");
    const int N = static_cast<int>(h.basis.size());
    const int m = lam.ctx->m();
    // order the basis block by block
    std::vector<int> order(N);
    for (int r = 0; r < N; ++r) order[r] = r;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return grade(lam, h.basis[a].first, h.basis[a].second) < grade(lam, h.basis[b].first, h.basis[b].second);
    });
    QuiverPoint p;
    p.ctx = lam.ctx;
    p.n = lam.n;
    p.dims.assign(m, 0);
    for (int r = 0; r < N; ++r) ++p.dims[grade(lam, h.basis[r].first, h.basis[r].second)];
    p.X = zeros<CycScalar>(N, N);
    p.Y = zeros<CycScalar>(N, N);
    p.i = zeros<CycScalar>(N, 1);
    p.j = zeros<CycScalar>(1, N);
    if (N == 0) return p;
    std::vector<int> pos(N);
    for (int r = 0; r < N; ++r) pos[order[r]] = r;
    // coordinates: B^T c = row^T
    ExactMatrix bt = h.rows.transpose();
    std::vector<L0Element> targets;
    for (int r = 0; r < N; ++r) {
        auto v = L0Element::basis(h.basis[r].first, h.basis[r].second);
        targets.push_back(l0_act(v, Letter{Letter::X, 0}, lam));
        targets.push_back(l0_act(v, Letter{Letter::Y, 0}, lam));
    }
    targets.push_back(L0Element::basis(0, 0));
    ExactMatrix rhs(bt.rows(), static_cast<Eigen::Index>(targets.size()));
    for (size_t t = 0; t < targets.size(); ++t) {
        auto row = pairing_row(targets[t], D, lam);
        for (Eigen::Index c = 0; c < bt.rows(); ++c) rhs(c, t) = row[c];
    }
    auto coords = solve<CycScalar>(bt, rhs);
    if (!coords) throw BoundError("point_from_lambda: window too small to express the action");
    for (int r = 0; r < N; ++r) {
        for (int s = 0; s < N; ++s) {
            p.X(pos[s], pos[r]) = (*coords)(s, 2 * r);
            p.Y(pos[s], pos[r]) = (*coords)(s, 2 * r + 1);
        }
        p.j(0, pos[r]) = lam.at(h.basis[r].first, h.basis[r].second);
    }
    for (int s = 0; s < N; ++s) p.i(pos[s], 0) = (*coords)(s, 2 * N);
    return p;
}

}  // namespace kq
