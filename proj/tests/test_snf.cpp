/*
   Copyright 2026 The iwa Authors

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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "iwa/finite_module.hpp"

using namespace iwa;

namespace {

template <class Word>
Mat<Word> random_mat(const Zmod<Word>& R, std::size_t r, std::size_t c, std::mt19937_64& rng, int min_val) {
    Mat<Word> A(r, c);
    for (auto& x : A.a) {
        if (rng() % 3 == 0) continue;
        x = R.mul(R.from_i64(static_cast<std::int64_t>(rng() % 1000000)), R.pow_p(static_cast<int>(rng() % (min_val + 1))));
    }
    return A;
}

template <class Word>
void check_snf(const Zmod<Word>& R, const Mat<Word>& A, const SnfResult<Word>& s) {
    const auto D = mat_mul(R, mat_mul(R, s.U, A), s.V);
    for (std::size_t i = 0; i < D.rows; ++i)
        for (std::size_t j = 0; j < D.cols; ++j) {
            if (i == j && i < s.diag_val.size()) {
                ASSERT_EQ(D(i, j), R.pow_p(s.diag_val[i]));
            } else {
                ASSERT_EQ(D(i, j), Word(0));
            }
        }
    for (std::size_t t = 1; t < s.rank; ++t) EXPECT_LE(s.diag_val[t - 1], s.diag_val[t]);
    const auto I1 = mat_mul(R, s.U, transpose(s.UinvT));
    const auto I2 = mat_mul(R, s.V, s.Vinv);
    EXPECT_EQ(I1.a, Mat<Word>::identity(A.rows).a);
    EXPECT_EQ(I2.a, Mat<Word>::identity(A.cols).a);
}

// Brute force: closure of the generated subgroup in (+) Z/p^{c_j}.
int brute_subgroup(std::uint64_t p, const std::vector<int>& orders, const std::vector<std::vector<std::uint64_t>>& gens) {
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<std::vector<std::uint64_t>> stack{std::vector<std::uint64_t>(orders.size(), 0)};
    seen.insert(stack.front());
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
            auto w = v;
            for (std::size_t j = 0; j < w.size(); ++j) w[j] = (w[j] + g[j]) % static_cast<std::uint64_t>(ipow_sat(p, orders[j]));
            if (seen.insert(w).second) stack.push_back(w);
        }
    }
    int l = 0;
    for (std::size_t s = seen.size(); s > 1; s /= p) ++l;
    return l;
}

}  // namespace

TEST(Snf, TransformsDiagonalizeRandom64) {
    std::mt19937_64 rng(1);
    for (std::uint64_t p : {3u, 5u, 7u}) {
        const Zmod64 R(p, 6);
        for (int it = 0; it < 20; ++it) {
            const auto A = random_mat(R, 1 + rng() % 7, 1 + rng() % 7, rng, 3);
            check_snf(R, A, smith_normal_form(R, A, SnfOptions{true, true}));
        }
    }
}

TEST(Snf, TransformsDiagonalizeRandom128) {
    std::mt19937_64 rng(2);
    const Zmod128 R(5, 32);
    for (int it = 0; it < 20; ++it) {
        const auto A = random_mat(R, 1 + rng() % 6, 1 + rng() % 6, rng, 20);
        check_snf(R, A, smith_normal_form(R, A, SnfOptions{true, true}));
    }
}

TEST(Snf, KnownDiagonal) {
    const Zmod64 R(5, 4);
    Mat<std::uint64_t> A(2, 2);
    A(0, 0) = 25;
    A(0, 1) = 5;
    A(1, 0) = 0;
    A(1, 1) = 50;
    const auto s = smith_normal_form(R, A, SnfOptions{true, true});
    // gcd of entries is 5, determinant 1250 = 2 * 5^4 -> diag(5, 5^3)
    EXPECT_EQ(s.diag_val, (std::vector<int>{1, 3}));
    check_snf(R, A, s);
}

TEST(SubgroupSize, MatchesBruteForce) {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 40; ++it) {
        const std::uint64_t p = it % 2 ? 3 : 5;
        std::vector<int> orders;
        const int k = 1 + static_cast<int>(rng() % 3);
        for (int j = 0; j < k; ++j) orders.push_back(1 + static_cast<int>(rng() % (p == 3 ? 3 : 2)));
        std::vector<std::vector<std::uint64_t>> gens(rng() % 4);
        for (auto& g : gens)
            for (int j = 0; j < k; ++j) g.push_back(rng() % ipow_sat(p, orders[static_cast<std::size_t>(j)]));
        EXPECT_EQ(subgroup_log_size(p, orders, gens), brute_subgroup(p, orders, gens));
    }
}

TEST(FiniteModule, CokernelWithAction) {
    // Z^2 / <(9, 0), (3, 3)>, p = 3, T e_0 = 3 e_1, T e_1 = 0; the relations are T-stable.
    Mat<std::uint64_t> rel(2, 2), t(2, 2);
    rel(0, 0) = 9;
    rel(0, 1) = 3;
    rel(1, 1) = 3;
    t(0, 0) = 0;
    t(1, 0) = 3;  // T e_0 = 3 e_1
    t(0, 1) = 0;
    t(1, 1) = 0;  // T e_1 = 0
    const auto X = cokernel_finite(3, 4, rel, t);
    EXPECT_EQ(X.log_size(), 3);
    EXPECT_EQ(X.orders, (std::vector<int>{2, 1}));
    EXPECT_TRUE(X.well_defined());
}

TEST(FiniteModule, DirectSumSortsOrders) {
    FiniteWTModule a{5, {1}, {{0}}}, b{5, {2}, {{5}}};
    const auto s = direct_sum(a, b);
    EXPECT_EQ(s.orders, (std::vector<int>{2, 1}));
    EXPECT_EQ(s.t_action[0][0], 5u);
    EXPECT_TRUE(s.well_defined());
}
