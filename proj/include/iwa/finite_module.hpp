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

#ifndef IWA_FINITE_MODULE_HPP
#define IWA_FINITE_MODULE_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "snf.hpp"

namespace iwa {

/// (+)_i W/p^{c_i} with c_1 >= c_2 >= ... >= 1 and a T-action. Row convention:
/// T e_i = sum_j t_action[i][j] e_j, entry (i, j) reduced into [0, p^{c_j}).
struct FiniteWTModule {
    std::uint64_t p = 5;
    std::vector<int> orders;
    std::vector<std::vector<std::uint64_t>> t_action;

    std::size_t ngens() const noexcept { return orders.size(); }
    int log_size() const noexcept { return std::accumulate(orders.begin(), orders.end(), 0); }
    int max_order() const noexcept { return orders.empty() ? 0 : orders.front(); }
    std::uint64_t modulus(std::size_t j) const { return static_cast<std::uint64_t>(ipow_sat(p, orders[j])); }

    /// Orders sorted, entries reduced, and p^{c_i} T e_i = 0.
    bool well_defined() const {
        if (t_action.size() != orders.size()) return false;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            if (orders[i] < 1 || (i > 0 && orders[i] > orders[i - 1])) return false;
            if (t_action[i].size() != orders.size()) return false;
            for (std::size_t j = 0; j < orders.size(); ++j) {
                if (t_action[i][j] >= modulus(j)) return false;
                const int need = std::max(0, orders[j] - orders[i]);
                if (need > 0 && t_action[i][j] % static_cast<std::uint64_t>(ipow_sat(p, need)) != 0) return false;
            }
        }
        return true;
    }

    friend bool operator==(const FiniteWTModule&, const FiniteWTModule&) = default;
};

/// Reorders generators so that orders are nonincreasing (stable).
inline FiniteWTModule sorted_by_order(const FiniteWTModule& X) {
    std::vector<std::size_t> perm(X.ngens());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return X.orders[a] > X.orders[b]; });
    FiniteWTModule Y;
    Y.p = X.p;
    for (auto i : perm) Y.orders.push_back(X.orders[i]);
    Y.t_action.assign(perm.size(), std::vector<std::uint64_t>(perm.size()));
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = 0; b < perm.size(); ++b) Y.t_action[a][b] = X.t_action[perm[a]][perm[b]];
    return Y;
}

inline FiniteWTModule direct_sum(const FiniteWTModule& A, const FiniteWTModule& B) {
    FiniteWTModule S;
    S.p = A.p;
    S.orders = A.orders;
    S.orders.insert(S.orders.end(), B.orders.begin(), B.orders.end());
    const std::size_t n = S.orders.size(), na = A.ngens();
    S.t_action.assign(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) S.t_action[i][j] = A.t_action[i][j];
    for (std::size_t i = 0; i < B.ngens(); ++i)
        for (std::size_t j = 0; j < B.ngens(); ++j) S.t_action[na + i][na + j] = B.t_action[i][j];
    return sorted_by_order(S);
}

/// log_p of the subgroup of (+) Z/p^{orders[j]} generated by the given coordinate vectors.
inline int subgroup_log_size(std::uint64_t p, const std::vector<int>& orders, const std::vector<std::vector<std::uint64_t>>& vecs) {
    const std::size_t k = orders.size();
    if (k == 0) return 0;
    const int cmax = *std::max_element(orders.begin(), orders.end());
    const Zmod64 R(p, cmax + 1);
    // Z^k / (span(vecs) + (+) p^{c_j} Z): columns are relations.
    Mat<std::uint64_t> A(k, vecs.size() + k);
    for (std::size_t c = 0; c < vecs.size(); ++c)
        for (std::size_t j = 0; j < k; ++j) A(j, c) = vecs[c][j] % R.modulus();
    for (std::size_t j = 0; j < k; ++j) A(j, vecs.size() + j) = R.pow_p(orders[j]);
    const auto snf = smith_normal_form(R, std::move(A), SnfOptions{false, false});
    int index = 0;
    for (int v : snf.diag_val) index += v;
    return std::accumulate(orders.begin(), orders.end(), 0) - index;
}

/// Finite module Z^m / span(relation columns) with T given on Z^m by a column-convention matrix
/// (T e_i = column i of tmat). K must exceed every invariant factor exponent.
inline FiniteWTModule cokernel_finite(std::uint64_t p, int K, const Mat<std::uint64_t>& relations, const Mat<std::uint64_t>& tmat) {
    const Zmod64 R(p, K);
    const auto snf = smith_normal_form(R, relations, SnfOptions{true, false});
    const std::size_t m = relations.rows;
    if (snf.rank < m) throw Error(ErrorKind::PrecisionExhausted, "cokernel is not finite at the working precision");
    std::vector<std::size_t> tors;
    for (std::size_t t = 0; t < m; ++t)
        if (snf.diag_val[t] > 0) tors.push_back(t);
    FiniteWTModule X;
    X.p = p;
    for (auto t : tors) X.orders.push_back(snf.diag_val[t]);
    X.t_action.assign(tors.size(), std::vector<std::uint64_t>(tors.size(), 0));
    std::vector<std::uint64_t> img(m);
    for (std::size_t a = 0; a < tors.size(); ++a) {
        const std::uint64_t* gen = snf.UinvT.row(tors[a]);
        std::fill(img.begin(), img.end(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            if (gen[i] == 0) continue;
            for (std::size_t r = 0; r < m; ++r)
                if (tmat(r, i) != 0) img[r] = R.add(img[r], R.mul(gen[i], tmat(r, i)));
        }
        for (std::size_t b = 0; b < tors.size(); ++b) {
            const std::uint64_t* u = snf.U.row(tors[b]);
            std::uint64_t y = 0;
            for (std::size_t r = 0; r < m; ++r)
                if (u[r] != 0 && img[r] != 0) y = R.add(y, R.mul(u[r], img[r]));
            X.t_action[a][b] = y % X.modulus(b);
        }
    }
    return sorted_by_order(X);
}

}  // namespace iwa

#endif
