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

#ifndef IWA_FINITE_DUAL_HPP
#define IWA_FINITE_DUAL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "presented.hpp"

namespace iwa {

namespace detail {

inline std::uint64_t upow(std::uint64_t p, int e) { return static_cast<std::uint64_t>(ipow_sat(p, e)); }

/// T on (Z/p^cmax)^k extending the action on M, via e_i -> p^{cmax - c_i} eps_i.
inline Mat<std::uint64_t> uniform_action(const FiniteWTModule& M, const Zmod64& R) {
    const std::size_t k = M.ngens();
    Mat<std::uint64_t> A(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const std::uint64_t t = M.t_action[i][j];
            const int d = M.orders[i] - M.orders[j];
            A(i, j) = d >= 0 ? R.mul(t % R.modulus(), R.pow_p(d)) : (t / upow(M.p, -d)) % R.modulus();
        }
    return A;
}

/// Inverse of a matrix over Z/p^K by Gauss-Jordan with unit pivots.
inline std::optional<Mat<std::uint64_t>> invert(const Zmod64& R, Mat<std::uint64_t> A) {
    const std::size_t n = A.rows;
    Mat<std::uint64_t> I = Mat<std::uint64_t>::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && !R.is_unit(A(piv, c))) ++piv;
        if (piv == n) return std::nullopt;
        A.swap_rows(c, piv);
        I.swap_rows(c, piv);
        const std::uint64_t w = R.inv(A(c, c));
        for (std::size_t j = 0; j < n; ++j) {
            A(c, j) = R.mul(A(c, j), w);
            I(c, j) = R.mul(I(c, j), w);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || A(r, c) == 0) continue;
            const std::uint64_t s = A(r, c);
            detail::row_axpy(R, A.row(r), A.row(c), s, n);
            detail::row_axpy(R, I.row(r), I.row(c), s, n);
        }
    }
    return I;
}

}  // namespace detail

/// Coordinates of T x for x given in the generator basis.
inline std::vector<std::uint64_t> apply_t(const FiniteWTModule& M, const std::vector<std::uint64_t>& x) {
    std::vector<std::uint64_t> y(M.ngens(), 0);
    for (std::size_t j = 0; j < M.ngens(); ++j) {
        const u128 m = M.modulus(j);
        u128 acc = 0;
        for (std::size_t i = 0; i < M.ngens(); ++i)
            if (x[i] != 0 && M.t_action[i][j] != 0) acc = (acc + u128(x[i]) * M.t_action[i][j]) % m;
        y[j] = static_cast<std::uint64_t>(acc);
    }
    return y;
}

/// Matrix of iota(T) = (1+T)^{-1} - 1 on M, row convention, entry (i, j) mod p^{c_j}.
inline std::vector<std::vector<std::uint64_t>> iota_action(const FiniteWTModule& M) {
    const std::size_t k = M.ngens();
    std::vector<std::vector<std::uint64_t>> S(k, std::vector<std::uint64_t>(k, 0));
    if (k == 0) return S;
    const Zmod64 R(M.p, M.max_order());
    auto A = detail::uniform_action(M, R);
    for (std::size_t i = 0; i < k; ++i) A(i, i) = R.add(A(i, i), 1);
    auto inv = detail::invert(R, A);
    if (!inv) throw Error(ErrorKind::NonInvertible, "1 + T is not invertible on the module");
    for (std::size_t i = 0; i < k; ++i) (*inv)(i, i) = R.sub((*inv)(i, i), 1);
    // back from the uniform basis: S_ij = S~_ij * p^{c_j - c_i}
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const std::uint64_t s = (*inv)(i, j);
            const int d = M.orders[j] - M.orders[i];
            const std::uint64_t mj = M.modulus(j);
            if (d >= 0) {
                S[i][j] = static_cast<std::uint64_t>(u128(s) * detail::upow(M.p, d) % mj);
            } else {
                if (s % detail::upow(M.p, -d) != 0) throw Error(ErrorKind::NonInvertible, "iota(T) does not preserve the module");
                S[i][j] = (s / detail::upow(M.p, -d)) % mj;
            }
        }
    return S;
}

/// Pontryagin dual Hom(M, Q_p/Z_p) with (f.phi)(m) = phi(iota(f) m), on the dual basis
/// phi_j(e_i) = delta_ij / p^{c_j}.
inline FiniteWTModule dual(const FiniteWTModule& M) {
    const auto S = iota_action(M);
    FiniteWTModule D;
    D.p = M.p;
    D.orders = M.orders;
    const std::size_t k = M.ngens();
    D.t_action.assign(k, std::vector<std::uint64_t>(k, 0));
    // (T phi_j)(e_i) = S_ij / p^{c_j} = t'_ji / p^{c_i}
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const int d = M.orders[i] - M.orders[j];
            const std::uint64_t mi = M.modulus(i);
            D.t_action[j][i] = d >= 0 ? static_cast<std::uint64_t>(u128(S[i][j]) * detail::upow(M.p, d) % mi)
                                      : (S[i][j] / detail::upow(M.p, -d)) % mi;
        }
    return D;
}

/// <e_i, phi_j> = num[i][j] / p^{denom_exp} in Q_p/Z_p.
struct PairingTable {
    int denom_exp = 0;
    std::vector<std::vector<std::uint64_t>> num;
};

struct PairingVerdict {
    bool ok = false;
    PairingTable table;
    std::string failure;                                      // empty when ok
    std::optional<std::pair<std::size_t, std::size_t>> witness;  // (i, j) generator pair
};

inline PairingTable canonical_pairing(const FiniteWTModule& M) {
    PairingTable P;
    P.denom_exp = M.max_order();
    const std::size_t k = M.ngens();
    P.num.assign(k, std::vector<std::uint64_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i) P.num[i][i] = detail::upow(M.p, P.denom_exp - M.orders[i]);
    return P;
}

/// Checks that the table is a well-defined perfect pairing M x D -> Q_p/Z_p with
/// <T x, y> = <x, iota(T) y> and <iota(T) x, y> = <x, T y> on generators.
inline PairingVerdict verify_pairing(const FiniteWTModule& M, const FiniteWTModule& D, const PairingTable& P) {
    PairingVerdict v;
    v.table = P;
    const std::size_t k = M.ngens(), l = D.ngens();
    const std::uint64_t m = detail::upow(M.p, P.denom_exp);
    auto fail = [&](std::string why, std::size_t i, std::size_t j) {
        v.ok = false;
        v.failure = std::move(why);
        v.witness = std::make_pair(i, j);
        return v;
    };
    if (P.num.size() != k || (k > 0 && P.num[0].size() != l)) return fail("table shape mismatch", 0, 0);
    const Zmod64 R(M.p, std::max(P.denom_exp, 1));
    // well-defined: p^{c_i} <e_i, .> = 0 and <., p^{d_j} phi_j> = 0
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            if (R.mul(P.num[i][j] % m, R.pow_p(M.orders[i])) != 0) return fail("not well defined on the left", i, j);
            if (R.mul(P.num[i][j] % m, R.pow_p(D.orders[j])) != 0) return fail("not well defined on the right", i, j);
        }
    const std::vector<int> unif_l(l, P.denom_exp), unif_k(k, P.denom_exp);
    std::vector<std::vector<std::uint64_t>> rows(k), cols(l, std::vector<std::uint64_t>(k));
    for (std::size_t i = 0; i < k; ++i) {
        rows[i] = P.num[i];
        for (std::size_t j = 0; j < l; ++j) cols[j][i] = P.num[i][j];
    }
    if (M.log_size() != D.log_size()) return fail("orders differ", 0, 0);
    if (subgroup_log_size(M.p, unif_l, rows) != M.log_size()) return fail("left radical is nonzero", 0, 0);
    if (subgroup_log_size(M.p, unif_k, cols) != D.log_size()) return fail("right radical is nonzero", 0, 0);
    const auto SM = iota_action(M), SD = iota_action(D);
    // nonzero table entries by column and by row
    std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> by_col(l), by_row(k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < l; ++b)
            if (const auto x = P.num[a][b] % m; x != 0) {
                by_col[b].emplace_back(a, x);
                by_row[a].emplace_back(b, x);
            }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            std::uint64_t lhs = 0, rhs = 0, lhs2 = 0, rhs2 = 0;
            for (const auto& [a, x] : by_col[j]) {
                lhs = R.mul_add(lhs, M.t_action[i][a] % m, x);
                lhs2 = R.mul_add(lhs2, SM[i][a] % m, x);
            }
            for (const auto& [b, x] : by_row[i]) {
                rhs = R.mul_add(rhs, SD[j][b] % m, x);
                rhs2 = R.mul_add(rhs2, D.t_action[j][b] % m, x);
            }
            if (lhs != rhs) return fail("<T x, y> != <x, iota(T) y>", i, j);
            if (lhs2 != rhs2) return fail("<iota(T) x, y> != <x, T y>", i, j);
        }
    v.ok = true;
    return v;
}

inline PairingVerdict pairing_check(const FiniteWTModule& M) { return verify_pairing(M, dual(M), canonical_pairing(M)); }

/// A generator of M as a Lambda-module when M is cyclic. By Nakayama, M is cyclic iff
/// M/(p,T)M = F_p^k / rowspace(T mod p) is a line, and e_i generates iff e_i is outside that row space.
inline std::optional<std::vector<std::uint64_t>> cyclic_generator(const FiniteWTModule& M) {
    const std::size_t k = M.ngens();
    if (k == 0) return std::vector<std::uint64_t>{};
    const Zmod64 F(M.p, 1);
    Mat<std::uint64_t> A(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) A(i, j) = M.t_action[i][j] % M.p;
    // reduced row echelon form over F_p
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < k; ++c) {
        std::size_t piv = r;
        while (piv < k && A(piv, c) == 0) ++piv;
        if (piv == k) continue;
        A.swap_rows(r, piv);
        const std::uint64_t w = F.inv(A(r, c));
        for (std::size_t j = 0; j < k; ++j) A(r, j) = F.mul(A(r, j), w);
        for (std::size_t i = 0; i < k; ++i)
            if (i != r && A(i, c) != 0) detail::row_axpy(F, A.row(i), A.row(r), A(i, c), k);
        pivot_col.push_back(c);
        ++r;
    }
    if (r + 1 != k) return std::nullopt;
    // the annihilator of the row space is spanned by y with y_f = 1 at the non-pivot column f,
    // so e_f lies outside the row space
    std::size_t f = 0;
    while (f < r && pivot_col[f] == f) ++f;
    std::vector<std::uint64_t> e(k, 0);
    e[f] = 1;
    return e;
}

/// For cyclic A and B: A = B as Lambda-modules iff Lambda (a, b) in A + B has the size of A and of B.
inline bool cyclic_isomorphic(const FiniteWTModule& A, const FiniteWTModule& B) {
    if (A.log_size() != B.log_size()) return false;
    if (A.log_size() == 0) return true;
    const auto ga = cyclic_generator(A), gb = cyclic_generator(B);
    if (!ga || !gb) throw Error(ErrorKind::InvalidInput, "module is not cyclic");
    const FiniteWTModule S = [&] {
        FiniteWTModule s;
        s.p = A.p;
        s.orders = A.orders;
        s.orders.insert(s.orders.end(), B.orders.begin(), B.orders.end());
        const std::size_t n = s.orders.size(), na = A.ngens();
        s.t_action.assign(n, std::vector<std::uint64_t>(n, 0));
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < na; ++j) s.t_action[i][j] = A.t_action[i][j];
        for (std::size_t i = 0; i < B.ngens(); ++i)
            for (std::size_t j = 0; j < B.ngens(); ++j) s.t_action[na + i][na + j] = B.t_action[i][j];
        return s;
    }();
    std::vector<std::uint64_t> v = *ga;
    v.insert(v.end(), gb->begin(), gb->end());
    // Lambda v / p Lambda v = F_p[T]/T^d with d <= ngens, so v, ..., T^d v span Lambda v over W
    std::vector<std::vector<std::uint64_t>> orbit;
    const auto len = std::min<std::size_t>(static_cast<std::size_t>(S.log_size()), S.ngens());
    for (std::size_t j = 0; j <= len; ++j) {
        orbit.push_back(v);
        v = apply_t(S, v);
    }
    return subgroup_log_size(S.p, S.orders, orbit) == A.log_size();
}

/// For each factor of E: the twisted dual of the torsion of (factor)/omega_n is isomorphic to the
/// torsion of twist(factor)/omega_n. Each such slice is cyclic.
inline bool dual_elementary_shadow(const ElementaryModule& E, int n) {
    const auto& prof = E.profile();
    for (const auto& fac : E.factors()) {
        const ElementaryModule one(prof, 0, {fac});
        const auto A = quotient_module(present_elementary(one), n).torsion;
        const auto B = quotient_module(present_elementary(twist(one)), n).torsion;
        if (!pairing_check(A).ok) return false;
        if (!cyclic_isomorphic(dual(A), B)) return false;
    }
    return true;
}

}  // namespace iwa

#endif
