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

#ifndef IWA_TOWER_HPP
#define IWA_TOWER_HPP

#include <optional>
#include <random>
#include <vector>

#include "finite_dual.hpp"

namespace iwa {

/// Level-n data of a synthetic tower: a divisible part of the given corank and a finite part,
/// perturbed by a kernel of order p^defect_in and a cokernel of order p^defect_out.
struct TowerLevel {
    int n = 0;
    int divisible_corank = 0;
    FiniteWTModule finite_part;
    int defect_in = 0;
    int defect_out = 0;
};

struct TowerReport {
    GrowthFit fit;
    std::int64_t nu_lo = 0, nu_hi = 0;          // nu up to +-2B
    std::optional<int> corank_stable_from;      // empty when the corank is still moving at the last level
    std::int64_t g_mu = 0, g_lambda = 0;        // invariants of the inferred G-limit
    std::vector<std::int64_t> log_sizes;
    int slack = 0;
};

namespace detail {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; }

/// Basis (over F_p) of the socle {x : p x = 0, T x = 0}, as coordinate vectors of M.
inline std::vector<std::vector<std::uint64_t>> socle_basis(const FiniteWTModule& M) {
    const std::size_t k = M.ngens();
    const std::uint64_t p = M.p;
    // x = sum a_i p^{c_i - 1} e_i; (T x)_j / p^{c_j - 1} mod p
    std::vector<std::vector<std::uint64_t>> A(k, std::vector<std::uint64_t>(k, 0));  // A[j][i]
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::uint64_t> x(k, 0);
        x[i] = upow(p, M.orders[i] - 1);
        const auto y = apply_t(M, x);
        for (std::size_t j = 0; j < k; ++j) A[j][i] = (y[j] / upow(p, M.orders[j] - 1)) % p;
    }
    // kernel of A over F_p
    std::vector<int> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < k; ++c) {
        std::size_t piv = r;
        while (piv < k && A[piv][c] == 0) ++piv;
        if (piv == k) continue;
        std::swap(A[piv], A[r]);
        const std::uint64_t w = Zmod64::pow_small(A[r][c], p - 2, p);
        for (auto& v : A[r]) v = v * w % p;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == r || A[i][c] == 0) continue;
            const std::uint64_t s = A[i][c];
            for (std::size_t j = 0; j < k; ++j) A[i][j] = (A[i][j] + (p - s) * A[r][j]) % p;
        }
        pivcol.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<bool> is_piv(k, false);
    for (int c : pivcol) is_piv[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<std::uint64_t>> basis;
    for (std::size_t f = 0; f < k; ++f) {
        if (is_piv[f]) continue;
        std::vector<std::uint64_t> a(k, 0);
        a[f] = 1;
        for (std::size_t row = 0; row < pivcol.size(); ++row) a[static_cast<std::size_t>(pivcol[row])] = (p - A[row][f]) % p;
        for (std::size_t i = 0; i < k; ++i) a[i] = a[i] * upow(p, M.orders[i] - 1);
        basis.push_back(std::move(a));
    }
    return basis;
}

/// M / S for S spanned by socle vectors.
inline FiniteWTModule quotient_by(const FiniteWTModule& M, const std::vector<std::vector<std::uint64_t>>& S) {
    const std::size_t k = M.ngens();
    if (S.empty() || k == 0) return M;
    const int K = M.max_order() + 1;
    Mat<std::uint64_t> rel(k, k + S.size()), t(k, k);
    const std::uint64_t mK = upow(M.p, K);
    for (std::size_t i = 0; i < k; ++i) rel(i, i) = upow(M.p, M.orders[i]);
    for (std::size_t s = 0; s < S.size(); ++s)
        for (std::size_t i = 0; i < k; ++i) rel(i, k + s) = S[s][i] % mK;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) t(j, i) = M.t_action[i][j] % mK;
    return cokernel_finite(M.p, K, rel, t);
}

/// Random F_p-subspace of the socle of dimension min(dim, socle dim).
inline std::vector<std::vector<std::uint64_t>> random_socle_subspace(const FiniteWTModule& M, int dim, std::mt19937_64& rng) {
    const auto basis = socle_basis(M);
    const std::size_t d = std::min<std::size_t>(static_cast<std::size_t>(dim), basis.size());
    if (d == 0) return {};
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<std::vector<std::uint64_t>> pick;
        for (std::size_t s = 0; s < d; ++s) {
            std::vector<std::uint64_t> v(M.ngens(), 0);
            for (const auto& b : basis) {
                const std::uint64_t c = draw(rng, M.p);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + c * b[i]) % M.modulus(i);
            }
            pick.push_back(std::move(v));
        }
        if (subgroup_log_size(M.p, M.orders, pick) == static_cast<int>(d)) return pick;
    }
    // fall back to a coordinate subspace of the basis
    return std::vector<std::vector<std::uint64_t>>(basis.begin(), basis.begin() + static_cast<std::ptrdiff_t>(d));
}

inline FiniteWTModule elementary_abelian(std::uint64_t p, int c) {
    FiniteWTModule X;
    X.p = p;
    X.orders.assign(static_cast<std::size_t>(c), 1);
    X.t_action.assign(static_cast<std::size_t>(c), std::vector<std::uint64_t>(static_cast<std::size_t>(c), 0));
    return X;
}

}  // namespace detail

/// Tower over `limit`: level n carries the slice of limit/omega_n limit, with a socle subquotient of
/// order <= p^B removed and an elementary abelian piece of order <= p^B added. Defects are redrawn
/// below a seeded stabilization level and held fixed from there on.
inline std::vector<TowerLevel> simulate(const ElementaryModule& limit, int B, int N, std::uint64_t seed) {
    if (limit.has_cyclo()) throw Error(ErrorKind::InvalidLimit, "cyclotomic torsion factor: finite parts would be unbounded");
    if (B < 0) throw Error(ErrorKind::InvalidInput, "defect bound must be >= 0");
    if (N < 1) throw Error(ErrorKind::InvalidInput, "depth must be >= 1");
    const auto& prof = limit.profile();
    const auto X = present_elementary(limit);
    std::mt19937_64 rng(seed);
    const int n_stab = N >= 3 ? 1 + static_cast<int>(detail::draw(rng, static_cast<std::uint64_t>(N - 2))) : 1;
    std::vector<QuotientModule> slices;
    for (int n = 1; n <= N; ++n) slices.push_back(quotient_module(X, n));
    const auto Bu = static_cast<std::uint64_t>(B) + 1;
    int tail_in = static_cast<int>(detail::draw(rng, Bu));
    const int tail_out = static_cast<int>(detail::draw(rng, Bu));
    // the removed part must have the same order on every stable level
    for (int n = n_stab; n <= N; ++n)
        tail_in = std::min(tail_in, static_cast<int>(detail::socle_basis(slices[static_cast<std::size_t>(n - 1)].torsion).size()));
    std::vector<TowerLevel> out;
    for (int n = 1; n <= N; ++n) {
        const auto& q = slices[static_cast<std::size_t>(n - 1)];
        int din = tail_in, dout = tail_out;
        if (n < n_stab) {
            din = static_cast<int>(detail::draw(rng, Bu));
            dout = static_cast<int>(detail::draw(rng, Bu));
        }
        const auto S = detail::random_socle_subspace(q.torsion, din, rng);
        TowerLevel L;
        L.n = n;
        L.divisible_corank = q.free_W_corank;
        L.defect_in = static_cast<int>(S.size());
        L.defect_out = dout;
        L.finite_part = direct_sum(detail::quotient_by(q.torsion, S), detail::elementary_abelian(prof.p, dout));
        out.push_back(std::move(L));
    }
    return out;
}

/// Fit the tail of the finite-part sizes exactly, then require every level to sit within 2B.
inline TowerReport analyze(const std::vector<TowerLevel>& tower, int B, std::uint64_t p) {
    if (tower.size() < 4) throw Error(ErrorKind::InvalidInput, "tower analysis needs depth >= 4");
    TowerReport r;
    r.slack = 2 * B;
    for (const auto& L : tower) r.log_sizes.push_back(L.finite_part.log_size());
    try {
        r.fit = fit_growth(r.log_sizes, p);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoIntegerFit) throw;
        throw Error(ErrorKind::NoConsistentFit, std::string("tail admits no growth law: ") + e.what());
    }
    for (std::size_t i = 0; i < r.log_sizes.size(); ++i) {
        const std::int64_t dev = r.log_sizes[i] - r.fit.predict(static_cast<int>(i) + 1, p);
        if (dev > r.slack || dev < -r.slack)
            throw Error(ErrorKind::NoConsistentFit, "level " + std::to_string(i + 1) + " deviates by " + std::to_string(dev) +
                                                        " from the fitted law (slack " + std::to_string(r.slack) + ")");
    }
    r.nu_lo = r.fit.nu - r.slack;
    r.nu_hi = r.fit.nu + r.slack;
    r.g_mu = r.fit.mu;
    r.g_lambda = r.fit.lambda;
    const std::size_t N = tower.size();
    std::size_t from = N - 1;
    while (from > 0 && tower[from - 1].divisible_corank == tower[N - 1].divisible_corank) --from;
    if (from + 1 < N) r.corank_stable_from = static_cast<int>(from) + 1;
    return r;
}

struct TowerComparison {
    bool bounded = false;
    std::int64_t witness = 0;  // max_n |e_n(t1) - e_n(t2)|
    std::int64_t bound = 0;    // |nu_1 - nu_2| + 2 * slack when mu and lambda agree
    TowerReport r1, r2;
};

inline TowerComparison compare_towers(const std::vector<TowerLevel>& t1, const std::vector<TowerLevel>& t2, int B, std::uint64_t p) {
    if (t1.size() != t2.size()) throw Error(ErrorKind::InvalidInput, "towers have different depths");
    TowerComparison c;
    c.r1 = analyze(t1, B, p);
    c.r2 = analyze(t2, B, p);
    for (std::size_t i = 0; i < t1.size(); ++i) {
        const std::int64_t d = c.r1.log_sizes[i] - c.r2.log_sizes[i];
        c.witness = std::max(c.witness, d < 0 ? -d : d);
    }
    const bool same = c.r1.fit.mu == c.r2.fit.mu && c.r1.fit.lambda == c.r2.fit.lambda;
    const std::int64_t dnu = c.r1.fit.nu - c.r2.fit.nu;
    c.bound = (dnu < 0 ? -dnu : dnu) + 2 * c.r1.slack;
    c.bounded = same && c.witness <= c.bound;
    return c;
}

}  // namespace iwa

#endif
