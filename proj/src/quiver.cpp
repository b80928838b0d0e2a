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
#include "kq/quiver.hpp"

#include <deque>
#include <random>

namespace kq {

int QuiverPoint::N() const {
    int s = 0;
    for (int k : dims) s += k;
    return s;
}

int QuiverPoint::offset(int block) const {
    int s = 0;
    for (int b = 0; b < block; ++b) s += dims[b];
    return s;
}

int QuiverPoint::block_of(int index) const {
    for (int b = 0; b < static_cast<int>(dims.size()); ++b) {
        if (index < dims[b]) return b;
        index -= dims[b];
    }
    throw ShapeError("basis index outside U");
}

ExactMatrix QuiverPoint::T() const {
    ExactMatrix t = zeros<CycScalar>(N(), N());
    for (int r = 0; r < N(); ++r) t(r, r) = ctx->tau_at(block_of(r));
    return t;
}

ExactMatrix QuiverPoint::projector(int block) const {
    ExactMatrix e = zeros<CycScalar>(N(), N());
    for (int r = offset(block); r < offset(block) + dims[block]; ++r) e(r, r) = CycScalar(1);
    return e;
}

namespace {

// Which entries of an N x N matrix may be nonzero: row block = col block + shift.
bool graded_entry(const QuiverPoint& p, int r, int c, int shift) {
    return p.block_of(r) == p.ctx->mod(p.block_of(c) + shift);
}

// Positions of free parameters, in a fixed order.
struct Param {
    enum Kind { X, Y, I, J } kind;
    int r, c;
};

std::vector<Param> graded_params(const QuiverPoint& p, bool x, bool y, bool i, bool j) {
    std::vector<Param> out;
    const int N = p.N();
    if (x)
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c)
                if (graded_entry(p, r, c, -1)) out.push_back({Param::X, r, c});
    if (y)
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c)
                if (graded_entry(p, r, c, 1)) out.push_back({Param::Y, r, c});
    if (i)
        for (int r = 0; r < N; ++r)
            if (p.block_of(r) == p.n) out.push_back({Param::I, r, 0});
    if (j)
        for (int c = 0; c < N; ++c)
            if (p.block_of(c) == p.n) out.push_back({Param::J, 0, c});
    return out;
}

// Degree-zero positions (r, c): the codomain of the moment map.
std::vector<std::pair<int, int>> diagonal_blocks(const QuiverPoint& p) {
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r < p.N(); ++r)
        for (int c = 0; c < p.N(); ++c)
            if (p.block_of(r) == p.block_of(c)) out.push_back({r, c});
    return out;
}

ExactMatrix unit_matrix(int rows, int cols, int r, int c) {
    ExactMatrix e = zeros<CycScalar>(rows, cols);
    e(r, c) = CycScalar(1);
    return e;
}

// d(XY - YX - ij) in direction param, at p.
ExactMatrix moment_derivative(const QuiverPoint& p, const Param& q) {
    const int N = p.N();
    switch (q.kind) {
        case Param::X: {
            auto e = unit_matrix(N, N, q.r, q.c);
            return matmul<CycScalar>(e, p.Y) - matmul<CycScalar>(p.Y, e);
        }
        case Param::Y: {
            auto e = unit_matrix(N, N, q.r, q.c);
            return matmul<CycScalar>(p.X, e) - matmul<CycScalar>(e, p.X);
        }
        case Param::I: return -matmul<CycScalar>(unit_matrix(N, 1, q.r, 0), p.j);
        case Param::J: return -matmul<CycScalar>(p.i, unit_matrix(1, N, 0, q.c));
    }
    return {};
}

ExactMatrix moment_jacobian(const QuiverPoint& p, const std::vector<Param>& params) {
    auto rows = diagonal_blocks(p);
    ExactMatrix jac = zeros<CycScalar>(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(params.size()));
    for (size_t c = 0; c < params.size(); ++c) {
        auto d = moment_derivative(p, params[c]);
        for (size_t r = 0; r < rows.size(); ++r) jac(r, c) = d(rows[r].first, rows[r].second);
    }
    return jac;
}

// Unknowns: entries of a graded (block diagonal) g.
std::vector<std::pair<int, int>> gauge_vars(const QuiverPoint& p) { return diagonal_blocks(p); }

// Rows for g X_p = X_q g, g Y_p = Y_q g, g i_p = i_q, j_q g = j_p.
std::pair<ExactMatrix, ExactMatrix> intertwiner_system(const QuiverPoint& p, const QuiverPoint& q) {
    const int N = p.N();
    auto vars = gauge_vars(p);
    std::vector<std::vector<int>> idx(N, std::vector<int>(N, -1));
    for (size_t v = 0; v < vars.size(); ++v) idx[vars[v].first][vars[v].second] = static_cast<int>(v);
    const Eigen::Index nv = static_cast<Eigen::Index>(vars.size());
    const Eigen::Index neq = 2L * N * N + 2L * N;
    ExactMatrix a = zeros<CycScalar>(neq, nv), b = zeros<CycScalar>(neq, 1);
    Eigen::Index row = 0;
    for (const auto* pair : {&p.X, &p.Y}) {
        const ExactMatrix& mp = *pair;
        const ExactMatrix& mq = pair == &p.X ? q.X : q.Y;
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c, ++row)
                for (int s = 0; s < N; ++s) {
                    if (idx[r][s] >= 0 && !mp(s, c).is_zero()) a(row, idx[r][s]) += mp(s, c);
                    if (idx[s][c] >= 0 && !mq(r, s).is_zero()) a(row, idx[s][c]) -= mq(r, s);
                }
    }
    for (int r = 0; r < N; ++r, ++row) {
        for (int s = 0; s < N; ++s)
            if (idx[r][s] >= 0) a(row, idx[r][s]) = p.i(s, 0);
        b(row, 0) = q.i(r, 0);
    }
    for (int c = 0; c < N; ++c, ++row) {
        for (int r = 0; r < N; ++r)
            if (idx[r][c] >= 0) a(row, idx[r][c]) = q.j(0, r);
        b(row, 0) = p.j(0, c);
    }
    return {a, b};
}

bool shapes_ok(const QuiverPoint& p, std::vector<std::string>* report) {
    auto fail = [&](const std::string& s) {
        if (report) report->push_back(s);
        return false;
    };
    if (!p.ctx) return fail("missing algebra context");
    if (static_cast<int>(p.dims.size()) != p.ctx->m()) return fail("dims must have m entries");
    for (int k : p.dims)
        if (k < 0) return fail("negative block dimension");
    if (p.n < 0 || p.n >= p.ctx->m()) return fail("framing index n outside 0..m-1");
    const int N = p.N();
    if (p.X.rows() != N || p.X.cols() != N) return fail("X has wrong shape");
    if (p.Y.rows() != N || p.Y.cols() != N) return fail("Y has wrong shape");
    if (p.i.rows() != N || p.i.cols() != 1) return fail("i has wrong shape");
    if (p.j.rows() != 1 || p.j.cols() != N) return fail("j has wrong shape");
    return true;
}

void require_shapes(const QuiverPoint& p) {
    std::vector<std::string> rep;
    if (!shapes_ok(p, &rep)) throw ShapeError(rep.front());
}

std::string block_name(const char* what, int r, int c) {
    return std::string(what) + " block (" + std::to_string(r) + "," + std::to_string(c) + ")";
}

}  // namespace

std::vector<std::string> validate_point(const QuiverPoint& p) {
    std::vector<std::string> rep;
    if (!shapes_ok(p, &rep)) return rep;
    const int N = p.N(), m = p.ctx->m();
    // grading, reported once per offending block pair
    std::vector<std::vector<bool>> badx(m, std::vector<bool>(m)), bady = badx;
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            int br = p.block_of(r), bc = p.block_of(c);
            if (!p.X(r, c).is_zero() && !graded_entry(p, r, c, -1)) badx[br][bc] = true;
            if (!p.Y(r, c).is_zero() && !graded_entry(p, r, c, 1)) bady[br][bc] = true;
        }
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (badx[a][b]) rep.push_back("grading: X has nonzero " + block_name("U_c -> U_r", a, b));
            if (bady[a][b]) rep.push_back("grading: Y has nonzero " + block_name("U_c -> U_r", a, b));
        }
    for (int r = 0; r < N; ++r) {
        if (!p.i(r, 0).is_zero() && p.block_of(r) != p.n) {
            rep.push_back("grading: i not supported in U_n");
            break;
        }
    }
    for (int c = 0; c < N; ++c) {
        if (!p.j(0, c).is_zero() && p.block_of(c) != p.n) {
            rep.push_back("grading: j not supported on U_n");
            break;
        }
    }
    ExactMatrix mu = matmul<CycScalar>(p.X, p.Y) - matmul<CycScalar>(p.Y, p.X) + p.T() - matmul<CycScalar>(p.i, p.j);
    std::vector<std::vector<bool>> badm(m, std::vector<bool>(m));
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c)
            if (!mu(r, c).is_zero()) badm[p.block_of(r)][p.block_of(c)] = true;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (badm[a][b]) rep.push_back("moment map: XY - YX + T - ij nonzero in " + block_name("U_c -> U_r", a, b));
    return rep;
}

ExactMatrix krylov_basis(const QuiverPoint& p) {
    require_shapes(p);
    const int N = p.N();
    // echelon rows: (pivot, reduced vector with pivot entry 1)
    std::vector<std::pair<int, ExactMatrix>> ech;
    std::vector<ExactMatrix> basis;
    std::deque<ExactMatrix> queue{p.i};
    while (!queue.empty() && static_cast<int>(basis.size()) < N) {
        ExactMatrix v = queue.front();
        queue.pop_front();
        ExactMatrix w = v;
        for (const auto& [piv, e] : ech)
            if (!w(piv, 0).is_zero()) w -= e * w(piv, 0);
        int piv = -1;
        for (int r = 0; r < N; ++r)
            if (!w(r, 0).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        w = w * w(piv, 0).inv();
        for (auto& [q, e] : ech)
            if (!e(piv, 0).is_zero()) e -= w * e(piv, 0);
        ech.push_back({piv, w});
        basis.push_back(v);
        queue.push_back(matmul<CycScalar>(p.X, v));
        queue.push_back(matmul<CycScalar>(p.Y, v));
    }
    ExactMatrix out = zeros<CycScalar>(N, static_cast<Eigen::Index>(basis.size()));
    for (size_t k = 0; k < basis.size(); ++k) out.col(k) = basis[k];
    return out;
}

bool check_stability(const QuiverPoint& p) { return krylov_basis(p).cols() == p.N(); }

QuiverPoint gauge_apply(const QuiverPoint& p, const ExactMatrix& g) {
    require_shapes(p);
    const int N = p.N();
    if (g.rows() != N || g.cols() != N) throw GaugeError("gauge matrix has wrong shape");
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c)
            if (!g(r, c).is_zero() && p.block_of(r) != p.block_of(c)) throw GaugeError("gauge matrix is not block diagonal");
    auto gi = inverse<CycScalar>(g);
    if (!gi) throw GaugeError("gauge matrix is not invertible");
    QuiverPoint q = p;
    q.X = matmul<CycScalar>(matmul<CycScalar>(g, p.X), *gi);
    q.Y = matmul<CycScalar>(matmul<CycScalar>(g, p.Y), *gi);
    q.i = matmul<CycScalar>(g, p.i);
    q.j = matmul<CycScalar>(p.j, *gi);
    return q;
}

std::optional<ExactMatrix> gauge_equivalent(const QuiverPoint& p, const QuiverPoint& q) {
    require_shapes(p);
    require_shapes(q);
    if (p.dims != q.dims || p.n != q.n || !(*p.ctx == *q.ctx)) return std::nullopt;
    if (!validate_point(p).empty() || !validate_point(q).empty()) throw StabilityError("gauge_equivalent: invalid point");
    if (!check_stability(p) || !check_stability(q)) throw StabilityError("gauge_equivalent: unstable point");
    auto [a, b] = intertwiner_system(p, q);
    auto sol = solve<CycScalar>(a, b);
    if (!sol) return std::nullopt;
    const int N = p.N();
    ExactMatrix g = zeros<CycScalar>(N, N);
    auto vars = gauge_vars(p);
    for (size_t v = 0; v < vars.size(); ++v) g(vars[v].first, vars[v].second) = (*sol)(v, 0);
    if (rank(g) < N) return std::nullopt;
    return g;
}

int stabilizer_dimension(const QuiverPoint& p) {
    require_shapes(p);
    auto a = intertwiner_system(p, p).first;
    return static_cast<int>(a.cols() - rank(a));
}

QuiverPoint pack_cyclic(const CyclicQuiverPoint& c) {
    if (!c.ctx) throw ShapeError("missing algebra context");
    const int m = c.ctx->m();
    if (static_cast<int>(c.dims.size()) != m || static_cast<int>(c.X.size()) != m || static_cast<int>(c.Y.size()) != m)
        throw ShapeError("cyclic point needs m blocks of each kind");
    QuiverPoint p;
    p.ctx = c.ctx;
    p.n = c.n;
    p.dims = c.dims;
    if (p.n < 0 || p.n >= m) throw ShapeError("framing index n outside 0..m-1");
    const int N = p.N();
    p.X = zeros<CycScalar>(N, N);
    p.Y = zeros<CycScalar>(N, N);
    p.i = zeros<CycScalar>(N, 1);
    p.j = zeros<CycScalar>(1, N);
    for (int b = 0; b < m; ++b) {
        int b1 = (b + 1) % m;
        if (c.X[b].rows() != c.dims[b] || c.X[b].cols() != c.dims[b1]) throw ShapeError("X block " + std::to_string(b) + " has wrong shape");
        if (c.Y[b].rows() != c.dims[b1] || c.Y[b].cols() != c.dims[b]) throw ShapeError("Y block " + std::to_string(b) + " has wrong shape");
        if (c.dims[b] && c.dims[b1]) {
            p.X.block(p.offset(b), p.offset(b1), c.dims[b], c.dims[b1]) = c.X[b];
            p.Y.block(p.offset(b1), p.offset(b), c.dims[b1], c.dims[b]) = c.Y[b];
        }
    }
    const int kn = c.dims[c.n];
    if (c.i.rows() != kn || c.i.cols() != 1 || c.j.rows() != 1 || c.j.cols() != kn) throw ShapeError("framing maps have wrong shape");
    if (kn) {
        p.i.block(p.offset(c.n), 0, kn, 1) = c.i;
        p.j.block(0, p.offset(c.n), 1, kn) = c.j;
    }
    auto rep = validate_point(p);
    if (!rep.empty()) throw ValidationError(rep.front());
    return p;
}

CyclicQuiverPoint unpack_cyclic(const QuiverPoint& p) {
    auto rep = validate_point(p);
    if (!rep.empty()) throw ValidationError(rep.front());
    const int m = p.ctx->m();
    CyclicQuiverPoint c;
    c.ctx = p.ctx;
    c.n = p.n;
    c.dims = p.dims;
    for (int b = 0; b < m; ++b) {
        int b1 = (b + 1) % m;
        c.X.push_back(p.X.block(p.offset(b), p.offset(b1), p.dims[b], p.dims[b1]));
        c.Y.push_back(p.Y.block(p.offset(b1), p.offset(b), p.dims[b1], p.dims[b]));
    }
    c.i = p.i.block(p.offset(p.n), 0, p.dims[p.n], 1);
    c.j = p.j.block(0, p.offset(p.n), 1, p.dims[p.n]);
    return c;
}

long expected_dimension(int m, int n, const std::vector<int>& dims) {
    if (static_cast<int>(dims.size()) != m || n < 0 || n >= m) throw ShapeError("expected_dimension: bad dims or n");
    if (m == 1) return 2L * dims[0];
    if (m == 2) {
        long d = dims[0] - dims[1];
        return 2 * (dims[n] - d * d);
    }
    long sq = 0, cross = 0;
    for (int a = 0; a < m; ++a) {
        sq += static_cast<long>(dims[a]) * dims[a];
        for (int b = a + 1; b < m; ++b) cross += static_cast<long>(dims[a]) * dims[b];
    }
    return 2 * (dims[n] - (sq - cross));
}

long cyclic_dimension(int m, int n, const std::vector<int>& dims) {
    if (static_cast<int>(dims.size()) != m || n < 0 || n >= m) throw ShapeError("cyclic_dimension: bad dims or n");
    long adj = 0, sq = 0;
    for (int a = 0; a < m; ++a) {
        adj += static_cast<long>(dims[a]) * dims[(a + 1) % m];
        sq += static_cast<long>(dims[a]) * dims[a];
    }
    return 2 * adj + 2L * dims[n] - 2 * sq;
}

long tangent_dimension(const QuiverPoint& p) {
    auto rep = validate_point(p);
    if (!rep.empty()) throw ValidationError(rep.front());
    if (!check_stability(p)) throw StabilityError("tangent_dimension: unstable point");
    auto params = graded_params(p, true, true, true, true);
    long ambient = static_cast<long>(params.size());
    long rk = params.empty() ? 0 : static_cast<long>(rank(moment_jacobian(p, params)));
    long gauge = 0;
    for (int k : p.dims) gauge += static_cast<long>(k) * k;
    return ambient - rk - (gauge - stabilizer_dimension(p));
}

namespace {

CycScalar draw(std::mt19937_64& rng, int m, bool nonzero) {
    std::uniform_int_distribution<int> d(-3, 3);
    int v = d(rng);
    while (nonzero && v == 0) v = d(rng);
    return CycScalar(Rational(v), m);
}

void set_param(QuiverPoint& p, const Param& q, const CycScalar& v) {
    switch (q.kind) {
        case Param::X: p.X(q.r, q.c) = v; break;
        case Param::Y: p.Y(q.r, q.c) = v; break;
        case Param::I: p.i(q.r, 0) = v; break;
        case Param::J: p.j(0, q.c) = v; break;
    }
}

}  // namespace

QuiverPoint random_point(const Ctx& ctx, int n, const std::vector<int>& dims, std::uint64_t seed, int retries) {
    const int m = ctx->m();
    if (static_cast<int>(dims.size()) != m || n < 0 || n >= m) throw ShapeError("random_point: bad dims or n");
    if (cyclic_dimension(m, n, dims) < 0) throw GenerationError("random_point: empty stratum (negative dimension)");
    QuiverPoint base;
    base.ctx = ctx;
    base.n = n;
    base.dims = dims;
    const int N = base.N();
    base.X = zeros<CycScalar>(N, N);
    base.Y = zeros<CycScalar>(N, N);
    base.i = zeros<CycScalar>(N, 1);
    base.j = zeros<CycScalar>(1, N);
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < retries; ++attempt) {
        QuiverPoint p = base;
        // even attempts: draw X, i and solve for Y, j; odd attempts swap the roles of X and Y
        bool fix_x = attempt % 2 == 0;
        for (const auto& q : graded_params(p, fix_x, !fix_x, true, false)) set_param(p, q, draw(rng, m, q.kind == Param::I));
        // the moment map is affine in the unknowns (currently zero), with linear part the Jacobian
        auto unknowns = graded_params(p, !fix_x, fix_x, false, true);
        auto rows = diagonal_blocks(p);
        ExactMatrix target = -p.T() - (matmul<CycScalar>(p.X, p.Y) - matmul<CycScalar>(p.Y, p.X) - matmul<CycScalar>(p.i, p.j));
        ExactMatrix rhs(static_cast<Eigen::Index>(rows.size()), 1);
        for (size_t r = 0; r < rows.size(); ++r) rhs(r, 0) = target(rows[r].first, rows[r].second);
        ExactMatrix jac = moment_jacobian(p, unknowns);
        if (unknowns.empty()) {
            if (!is_zero(rhs)) continue;
        } else {
            auto sol = solve<CycScalar>(jac, rhs);
            if (!sol) continue;
            ExactMatrix ker = nullspace(jac);
            ExactMatrix v = *sol;
            for (Eigen::Index k = 0; k < ker.cols(); ++k) v += ker.col(k) * draw(rng, m, false);
            for (size_t u = 0; u < unknowns.size(); ++u) set_param(p, unknowns[u], v(u, 0));
        }
        if (!validate_point(p).empty()) continue;
        if (!check_stability(p)) continue;
        return p;
    }
    throw GenerationError("random_point: no stable point found after " + std::to_string(retries) + " attempts");
}

ExactMatrix eval_word(const FreeSum& s, const QuiverPoint& p) {
    require_shapes(p);
    std::vector<ExactMatrix> proj;
    for (int b = 0; b < p.ctx->m(); ++b) proj.push_back(p.projector(b));
    return eval_word(s, p.X, p.Y, proj);
}

}  // namespace kq
