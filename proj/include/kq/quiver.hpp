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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kq/algebra.hpp"

namespace kq {

/*
   Point (X, Y, i, j) on U = U_0 + ... + U_{m-1}, basis ordered block by block.
   X: U_{i+1} -> U_i, Y: U_i -> U_{i+1}, i: W_n -> U_n, j: U_n -> W_n,
   XY - YX + T = ij with T = tau_i on U_i.
*/
struct QuiverPoint {
    Ctx ctx;
    int n = 0;
    std::vector<int> dims;
    ExactMatrix X, Y, i, j;

    int N() const;
    int offset(int block) const;  // first basis index of U_block
    int block_of(int index) const;
    ExactMatrix T() const;
    ExactMatrix projector(int block) const;
};

// Per-arrow form: X_b: V_{b+1} -> V_b (k_b x k_{b+1}), Y_b: V_b -> V_{b+1}.
struct CyclicQuiverPoint {
    Ctx ctx;
    int n = 0;
    std::vector<int> dims;
    std::vector<ExactMatrix> X, Y;
    ExactMatrix i, j;  // k_n x 1, 1 x k_n
};

// Empty iff p lies on the variety (stability is separate).
std::vector<std::string> validate_point(const QuiverPoint& p);
bool check_stability(const QuiverPoint& p);
// Basis of the smallest X,Y-invariant subspace containing im(i), as columns.
ExactMatrix krylov_basis(const QuiverPoint& p);

QuiverPoint gauge_apply(const QuiverPoint& p, const ExactMatrix& g);
std::optional<ExactMatrix> gauge_equivalent(const QuiverPoint& p, const QuiverPoint& q);
// Graded g with gX = Xg, gY = Yg, gi = 0, jg = 0; its dimension.
int stabilizer_dimension(const QuiverPoint& p);

QuiverPoint pack_cyclic(const CyclicQuiverPoint& c);
CyclicQuiverPoint unpack_cyclic(const QuiverPoint& p);

// Closed forms as printed; m = 1 gives 2 k_0.
long expected_dimension(int m, int n, const std::vector<int>& dims);
// 2 sum k_i k_{i+1} + 2 k_n - 2 sum k_i^2 (cyclic adjacency).
long cyclic_dimension(int m, int n, const std::vector<int>& dims);
long tangent_dimension(const QuiverPoint& p);

QuiverPoint random_point(const Ctx& ctx, int n, const std::vector<int>& dims, std::uint64_t seed,
                         int retries = 40);

ExactMatrix eval_word(const FreeSum& s, const QuiverPoint& p);

}  // namespace kq
