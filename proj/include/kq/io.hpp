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

#include "json.hpp"
#include "kq/gaction.hpp"
#include "kq/ideals.hpp"

namespace kq {

using Json = nlohmann::ordered_json;

/*
   File formats. Scalars are strings ("-3/7", or "(1 + 2*z)" in Q(zeta_m));
   tau entries may also be coefficient lists in powers of zeta.

   point:   {"m", "n", "tau", "dims", "X_blocks", "Y_blocks", "i", "j"}, blocks
            X_b: V_{b+1} -> V_b and Y_b: V_b -> V_{b+1}, row-major
   ideal:   {"m", "n", "tau", "generators": [{"form", "terms"}]} with terms
            poly: [k, l, i, c] for c x^k y^l e_i
            locX: {"l", "num", "den"} for (num/den)(x) y^l, coefficient lists ascending
            locY: {"k", "num", "den"} for (num/den)(y) x^k
   lambda:  {"m", "n", "tau", "bound", "values": [[k, l, c], ...]}, zeros omitted
   automorphism: [{"shearX": "y^2"}, {"shearY": "x"}, {"scale": "3"}]
*/

Json scalar_to_json(const CycScalar& c);
CycScalar scalar_from_json(const Json& j, int m);

Json context_to_json(const AlgebraContext& ctx);
Ctx context_from_json(const Json& j);

Json point_to_json(const QuiverPoint& p);
QuiverPoint point_from_json(const Json& j);

Json ideal_to_json(const FractionalIdeal& I);
FractionalIdeal ideal_from_json(const Json& j);

Json lambda_to_json(const LambdaTable& t);
LambdaTable lambda_from_json(const Json& j);

Json automorphism_to_json(const Automorphism& s);
Automorphism automorphism_from_json(const Json& j, const Ctx& ctx);

// ParseError on malformed text
Json parse_json(const std::string& text);

}  // namespace kq
