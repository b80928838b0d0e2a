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
#include "kq/io.hpp"

namespace kq {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' is not an integer");
    return v.get<int>();
}

Json poly_to_json(const CPoly& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(scalar_to_json(c));
    return a;
}

CPoly poly_from_json(const Json& j, int m) {
    if (!j.is_array()) throw ParseError("coefficient list expected");
    std::vector<CycScalar> c;
    for (const auto& e : j) c.push_back(scalar_from_json(e, m));
    return CPoly(std::move(c));
}

Json matrix_to_json(const ExactMatrix& a) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c) out.push_back(scalar_to_json(a(r, c)));
    return out;
}

ExactMatrix matrix_from_json(const Json& j, int rows, int cols, int m, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": list expected");
    if (static_cast<int>(j.size()) != rows * cols)
        throw ParseError(what + ": expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(j.size()));
    ExactMatrix a(rows, cols);
    for (int k = 0; k < rows * cols; ++k) a(k / cols, k % cols) = scalar_from_json(j[k], m);
    return a;
}

Json header(const AlgebraContext& ctx, int n) {
    Json j = context_to_json(ctx);
    j["n"] = n;
    return j;
}

CPoly single_variable(const Ctx& ctx, const std::string& s, char var) {
    AlgElem a = AlgElem::parse(ctx, s);
    std::vector<CycScalar> c;
    for (const auto& [key, g] : a.terms()) {
        int k = var == 'y' ? key.second : key.first;
        int other = var == 'y' ? key.first : key.second;
        if (other != 0) throw ParseError("'" + s + "' is not a polynomial in " + std::string(1, var));
        for (int i = 1; i < g.m(); ++i)
            if (g[i] != g[0]) throw ParseError("'" + s + "' has idempotent coefficients");
        if (static_cast<int>(c.size()) <= k) c.resize(k + 1, CycScalar(0));
        c[k] = g[0];
    }
    return CPoly(std::move(c));
}

}  // namespace

Json scalar_to_json(const CycScalar& c) { return c.str(); }

CycScalar scalar_from_json(const Json& j, int m) {
    if (j.is_string()) return CycScalar::parse(j.get<std::string>(), m);
    if (j.is_number_integer()) return CycScalar(Rational(j.get<long>()), m);
    if (j.is_array()) {
        std::vector<Rational> c;
        for (const auto& e : j) {
            if (e.is_string()) c.push_back(parse_rational(e.get<std::string>()));
            else if (e.is_number_integer()) c.push_back(Rational(e.get<long>()));
            else throw ParseError("cyclotomic coefficient must be a string or integer");
        }
        return CycScalar::from_coeffs(m, std::move(c));
    }
    throw ParseError("scalar must be a string, integer or coefficient list");
}

Json context_to_json(const AlgebraContext& ctx) {
    Json j;
    j["m"] = ctx.m();
    Json t = Json::array();
    for (const auto& c : ctx.tau()) t.push_back(scalar_to_json(c));
    j["tau"] = t;
    return j;
}

Ctx context_from_json(const Json& j) {
    const int m = int_field(j, "m");
    if (m < 1) throw ParseError("m must be positive");
    const Json& t = field(j, "tau");
    if (!t.is_array() || static_cast<int>(t.size()) != m) throw ParseError("tau must list m scalars");
    std::vector<CycScalar> tau;
    for (const auto& e : t) tau.push_back(scalar_from_json(e, m));
    return make_context(m, std::move(tau));
}

Json point_to_json(const QuiverPoint& p) {
    Json j = header(*p.ctx, p.n);
    j["dims"] = p.dims;
    CyclicQuiverPoint c = unpack_cyclic(p);
    Json xb = Json::array(), yb = Json::array();
    for (const auto& a : c.X) xb.push_back(matrix_to_json(a));
    for (const auto& a : c.Y) yb.push_back(matrix_to_json(a));
    j["X_blocks"] = xb;
    j["Y_blocks"] = yb;
    j["i"] = matrix_to_json(c.i);
    j["j"] = matrix_to_json(c.j);
    return j;
}

QuiverPoint point_from_json(const Json& j) {
    CyclicQuiverPoint c;
    c.ctx = context_from_json(j);
    const int m = c.ctx->m();
    c.n = int_field(j, "n");
    if (c.n < 0 || c.n >= m) throw ParseError("n must lie in 0..m-1");
    const Json& d = field(j, "dims");
    if (!d.is_array() || static_cast<int>(d.size()) != m) throw ParseError("dims must list m integers");
    for (const auto& e : d) {
        if (!e.is_number_integer() || e.get<int>() < 0) throw ParseError("dims must be nonnegative integers");
        c.dims.push_back(e.get<int>());
    }
    const Json& xb = field(j, "X_blocks");
    const Json& yb = field(j, "Y_blocks");
    if (!xb.is_array() || !yb.is_array() || static_cast<int>(xb.size()) != m || static_cast<int>(yb.size()) != m)
        throw ParseError("X_blocks and Y_blocks must have m entries");
    for (int b = 0; b < m; ++b) {
        const int here = c.dims[b], next = c.dims[(b + 1) % m];
        c.X.push_back(matrix_from_json(xb[b], here, next, m, "X_blocks[" + std::to_string(b) + "]"));
        c.Y.push_back(matrix_from_json(yb[b], next, here, m, "Y_blocks[" + std::to_string(b) + "]"));
    }
    c.i = matrix_from_json(field(j, "i"), c.dims[c.n], 1, m, "i");
    c.j = matrix_from_json(field(j, "j"), 1, c.dims[c.n], m, "j");
    return pack_cyclic(c);
}

Json ideal_to_json(const FractionalIdeal& I) {
    Json j = header(*I.ctx(), I.n());
    Json gens = Json::array();
    for (const auto& g : I.gens()) {
        Json e, terms = Json::array();
        if (auto* r = std::get_if<LocElemX>(&g)) {
            e["form"] = "locX";
            for (int l = 0; l <= r->deg_y(); ++l) {
                if (r->parts()[l].is_zero()) continue;
                terms.push_back({{"l", l}, {"num", poly_to_json(r->parts()[l].num())}, {"den", poly_to_json(r->parts()[l].den())}});
            }
            e["display"] = r->str();
        } else if (auto* r = std::get_if<LocElemY>(&g)) {
            e["form"] = "locY";
            for (int k = 0; k <= r->deg_x(); ++k) {
                if (r->parts()[k].is_zero()) continue;
                terms.push_back({{"k", k}, {"num", poly_to_json(r->parts()[k].num())}, {"den", poly_to_json(r->parts()[k].den())}});
            }
            e["display"] = r->str();
        } else {
            const auto& a = std::get<AlgElem>(g);
            e["form"] = "poly";
            for (const auto& [key, c] : a.terms())
                for (int i = 0; i < c.m(); ++i)
                    if (!c[i].is_zero()) terms.push_back(Json::array({key.first, key.second, i, scalar_to_json(c[i])}));
            e["display"] = a.str();
        }
        e["terms"] = terms;
        gens.push_back(e);
    }
    j["generators"] = gens;
    return j;
}

FractionalIdeal ideal_from_json(const Json& j) {
    Ctx ctx = context_from_json(j);
    const int m = ctx->m();
    const int n = int_field(j, "n");
    const Json& gs = field(j, "generators");
    if (!gs.is_array() || gs.empty()) throw ParseError("generators must be a nonempty list");
    std::vector<FractionalIdeal::Gen> gens;
    for (const auto& g : gs) {
        const Json& f = field(g, "form");
        if (!f.is_string()) throw ParseError("form must be a string");
        const std::string form = f.get<std::string>();
        const Json& terms = field(g, "terms");
        if (!terms.is_array()) throw ParseError("terms must be a list");
        if (form == "poly") {
            AlgElem a(ctx);
            for (const auto& t : terms) {
                if (!t.is_array() || t.size() != 4 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
                    !t[2].is_number_integer())
                    throw ParseError("poly term must be [k, l, i, c]");
                const int k = t[0].get<int>(), l = t[1].get<int>(), i = t[2].get<int>();
                if (k < 0 || l < 0) throw ParseError("negative exponent in poly term");
                a += AlgElem::term(ctx, scalar_from_json(t[3], m), k, l, ctx->mod(i));
            }
            gens.push_back(a);
        } else if (form == "locX" || form == "locY") {
            const bool is_x = form == "locX";
            const char var = is_x ? 'x' : 'y';
            LocElemX rx(ctx, n);
            LocElemY ry(ctx, n);
            for (const auto& t : terms) {
                const int e = int_field(t, is_x ? "l" : "k");
                if (e < 0) throw ParseError("negative exponent in " + form + " term");
                CPoly den = poly_from_json(field(t, "den"), m);
                if (den.is_zero()) throw ParseError("zero denominator");
                RatFunc r(poly_from_json(field(t, "num"), m), den, var);
                if (is_x) rx.add_part(e, r);
                else ry.set_part(e, ry.part(e) + r);
            }
            if (is_x) gens.push_back(rx);
            else gens.push_back(ry);
        } else {
            throw ParseError("unknown generator form '" + form + "'");
        }
    }
    return FractionalIdeal(ctx, n, std::move(gens));
}

Json lambda_to_json(const LambdaTable& t) {
    Json j = header(*t.ctx, t.n);
    j["bound"] = t.bound;
    Json v = Json::array();
    for (const auto& [key, c] : t.values) v.push_back(Json::array({key.first, key.second, scalar_to_json(c)}));
    j["values"] = v;
    return j;
}

LambdaTable lambda_from_json(const Json& j) {
    LambdaTable t;
    t.ctx = context_from_json(j);
    t.n = int_field(j, "n");
    t.bound = int_field(j, "bound");
    t.source = LambdaTable::Source::Solved;
    const Json& v = field(j, "values");
    if (!v.is_array()) throw ParseError("values must be a list");
    for (const auto& e : v) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ParseError("lambda entry must be [k, l, c]");
        const int k = e[0].get<int>(), l = e[1].get<int>();
        if (k < 0 || l < 0 || k > t.bound || l > t.bound) throw ParseError("lambda entry outside the bound");
        CycScalar c = scalar_from_json(e[2], t.ctx->m());
        if (!c.is_zero()) t.values[{k, l}] = c;
    }
    return t;
}

Json automorphism_to_json(const Automorphism& s) {
    Json a = Json::array();
    for (const auto& mv : s.moves) {
        switch (mv.kind) {
            case Move::Kind::ShearX: a.push_back({{"shearX", poly_str(mv.poly, 'y')}}); break;
            case Move::Kind::ShearY: a.push_back({{"shearY", poly_str(mv.poly, 'x')}}); break;
            case Move::Kind::Scale: a.push_back({{"scale", mv.c.str()}}); break;
        }
    }
    return a;
}

Automorphism automorphism_from_json(const Json& j, const Ctx& ctx) {
    if (!j.is_array()) throw ParseError("automorphism must be a list of moves");
    Automorphism s;
    for (const auto& e : j) {
        if (!e.is_object() || e.size() != 1) throw ParseError("each move is an object with one key");
        const std::string key = e.begin().key();
        const Json& v = e.begin().value();
        if (!v.is_string()) throw ParseError("move argument must be a string");
        const std::string arg = v.get<std::string>();
        if (key == "shearX") s = compose(s, Automorphism::shear_x(single_variable(ctx, arg, 'y')));
        else if (key == "shearY") s = compose(s, Automorphism::shear_y(single_variable(ctx, arg, 'x')));
        else if (key == "scale") s = compose(s, Automorphism::scale(CycScalar::parse(arg, ctx->m())));
        else throw ParseError("unknown move '" + key + "'");
    }
    return s;
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace kq
