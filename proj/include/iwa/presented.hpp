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

#ifndef IWA_PRESENTED_HPP
#define IWA_PRESENTED_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "elementary.hpp"
#include "finite_module.hpp"
#include "growth.hpp"

namespace iwa {

/// Cokernel of Lambda^cols -> Lambda^rows; columns are relations. Entries are exact
/// integer polynomials, read at whatever precision a computation needs.
class PresentedModule {
   public:
    PresentedModule(const PrecisionProfile& prof, std::size_t rows, std::size_t cols, std::vector<IntPoly> entries)
        : prof_(prof), rows_(rows), cols_(cols), e_(std::move(entries)) {
        prof_.validate();
        if (e_.size() != rows_ * cols_) throw Error(ErrorKind::InvalidInput, "presentation entry count does not match its shape");
        for (const auto& f : e_)
            if (f.degree() >= prof_.D) throw Error(ErrorKind::InsufficientTPrecision, "presentation entry has degree >= D");
    }

    const PrecisionProfile& profile() const noexcept { return prof_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const IntPoly& entry(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    RingElem series(std::size_t i, std::size_t j) const { return RingElem::from_poly(prof_, entry(i, j)); }
    const std::vector<IntPoly>& entries() const noexcept { return e_; }

    friend bool operator==(const PresentedModule& a, const PresentedModule& b) {
        return a.prof_ == b.prof_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

   private:
    PrecisionProfile prof_;
    std::size_t rows_, cols_;
    std::vector<IntPoly> e_;
};

/// Exact generator of a cyclic factor.
inline IntPoly factor_generator(const Factor& fac, const PrecisionProfile& prof) {
    if (auto pp = std::get_if<PPower>(&fac)) return IntPoly::constant(pow(BigInt(prof.p), static_cast<unsigned>(pp->f)));
    if (auto gen = std::get_if<Generic>(&fac)) return gen->g.poly().pow(static_cast<unsigned>(gen->e));
    const auto& cy = std::get<Cyclo>(fac);
    return cyclo_nu(cy.a, prof).poly().pow(static_cast<unsigned>(cy.e));
}

/// Free summands as empty rows, then one diagonal relation per factor.
inline PresentedModule present_elementary(const ElementaryModule& E) {
    const auto& prof = E.profile();
    const std::size_t r = static_cast<std::size_t>(E.free_rank()), f = E.factors().size();
    std::vector<IntPoly> ent((r + f) * f);
    for (std::size_t i = 0; i < f; ++i) ent[(r + i) * f + i] = factor_generator(E.factors()[i], prof);
    return PresentedModule(prof, r + f, f, std::move(ent));
}

struct QuotientModule {
    int free_W_corank = 0;
    FiniteWTModule torsion;
};

namespace detail {

/// Data of one connected block of the presentation at level n, reduced to 64-bit words mod p^M.
struct ComponentSlice {
    std::vector<std::size_t> rows, cols;
    std::size_t rank = 0;
    int max_pivot_val = 0;
    int free_count = 0;
    std::vector<int> orders;
    std::vector<std::vector<std::uint64_t>> gens;   // local (row, power) coordinates, mod p^M
    std::vector<std::vector<std::uint64_t>> funcs;  // mod p^{order}
    std::vector<std::vector<std::uint64_t>> ker_basis;  // local (col, power) coordinates, mod p^M
    std::vector<std::vector<std::uint64_t>> ker_coord;  // rows of V^{-1} for kernel positions
};

struct LevelSlice {
    int n = 0;
    std::size_t k = 0;
    int free_W_corank = 0;
    std::vector<ComponentSlice> comps;
    std::vector<std::pair<std::size_t, std::size_t>> tors;  // (component, index), orders nonincreasing
    std::vector<int> orders;
};

inline std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> components(const PresentedModule& X) {
    const std::size_t R = X.rows(), C = X.cols();
    std::vector<std::size_t> parent(R + C);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j)
            if (!X.entry(i, j).is_zero()) parent[find(i)] = find(R + j);
    std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
    for (std::size_t i = 0; i < R; ++i) groups[find(i)].first.push_back(i);
    for (std::size_t j = 0; j < C; ++j) groups[find(R + j)].second.push_back(j);
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    return out;
}

template <class Word>
std::vector<Word> omega_residues(const Zmod<Word>& R, std::uint64_t p, int n) {
    const IntPoly w = omega_poly(p, n);
    std::vector<Word> om(static_cast<std::size_t>(w.degree()));
    for (std::size_t j = 0; j < om.size(); ++j) om[j] = R.from_big(w.coeff(j));
    return om;
}

/// Coefficients of f mod (p^K, omega_n), length k.
template <class Word>
std::vector<Word> reduce_mod_omega(const Zmod<Word>& R, const std::vector<Word>& om, std::vector<Word> c) {
    const std::size_t k = om.size();
    for (std::size_t i = c.size(); i-- > k;) {
        const Word top = c[i];
        if (top == 0) continue;
        c[i] = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (om[j] != 0) c[i - k + j] = R.sub(c[i - k + j], R.mul(top, om[j]));
    }
    c.resize(k, Word(0));
    return c;
}

/// v <- T * v in Lambda / omega_n.
template <class Word>
void mul_t(const Zmod<Word>& R, const std::vector<Word>& om, Word* v) {
    const std::size_t k = om.size();
    const Word top = v[k - 1];
    for (std::size_t i = k - 1; i > 0; --i) v[i] = v[i - 1];
    v[0] = 0;
    if (top != 0)
        for (std::size_t j = 0; j < k; ++j)
            if (om[j] != 0) v[j] = R.sub(v[j], R.mul(top, om[j]));
}

template <class Word>
Mat<Word> build_w(const PresentedModule& X, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols, int n,
                  const Zmod<Word>& R) {
    const auto om = omega_residues(R, X.profile().p, n);
    const std::size_t k = om.size();
    Mat<Word> W(rows.size() * k, cols.size() * k);
    for (std::size_t ri = 0; ri < rows.size(); ++ri)
        for (std::size_t ci = 0; ci < cols.size(); ++ci) {
            const IntPoly& f = X.entry(rows[ri], cols[ci]);
            if (f.is_zero()) continue;
            std::vector<Word> c(f.coeffs().size());
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = R.from_big(f.coeffs()[i]);
            auto v = reduce_mod_omega(R, om, std::move(c));
            for (std::size_t j = 0; j < k; ++j) {
                for (std::size_t i = 0; i < k; ++i) W(ri * k + i, ci * k + j) = v[i];
                mul_t(R, om, v.data());
            }
        }
    return W;
}

template <class Word>
ComponentSlice extract(const SnfResult<Word>& s, std::uint64_t p, int M, std::size_t m, std::size_t kc,
                       bool want_kernel) {
    ComponentSlice out;
    const Word mM = static_cast<Word>(ipow_sat(p, M));
    out.rank = s.rank;
    out.free_count = static_cast<int>(m - s.rank);
    for (std::size_t t = 0; t < s.rank; ++t) {
        const int v = s.diag_val[t];
        out.max_pivot_val = std::max(out.max_pivot_val, v);
        if (v == 0) continue;
        out.orders.push_back(v);
        const Word mv = static_cast<Word>(ipow_sat(p, v));
        std::vector<std::uint64_t> g(m), f(m);
        for (std::size_t i = 0; i < m; ++i) {
            g[i] = static_cast<std::uint64_t>(s.UinvT(t, i) % mM);
            f[i] = static_cast<std::uint64_t>(s.U(t, i) % mv);
        }
        out.gens.push_back(std::move(g));
        out.funcs.push_back(std::move(f));
    }
    if (want_kernel) {
        for (std::size_t t = s.rank; t < kc; ++t) {
            std::vector<std::uint64_t> b(kc), c(kc);
            for (std::size_t i = 0; i < kc; ++i) {
                b[i] = static_cast<std::uint64_t>(s.V(i, t) % mM);
                c[i] = static_cast<std::uint64_t>(s.Vinv(t, i) % mM);
            }
            out.ker_basis.push_back(std::move(b));
            out.ker_coord.push_back(std::move(c));
        }
    }
    return out;
}

inline ComponentSlice slice_component(const PresentedModule& X, const std::vector<std::size_t>& rows,
                                      const std::vector<std::size_t>& cols, int n, bool want_kernel) {
    const auto& prof = X.profile();
    const std::size_t k = prof.omega_degree(n);
    const std::size_t m = rows.size() * k, kc = cols.size() * k;
    const SnfOptions opt{true, want_kernel};
    const Zmod64 R(prof.p, prof.M);
    auto s = smith_normal_form(R, build_w(X, rows, cols, n, R), opt);
    ComponentSlice out;
    if (s.rank < std::min(m, kc)) {
        // pivots indistinguishable from zero: recompute the block at doubled precision
        const Zmod128 R2(prof.p, 2 * prof.M);
        auto s2 = smith_normal_form(R2, build_w(X, rows, cols, n, R2), opt);
        for (std::size_t t = 0; t < s2.rank; ++t)
            if (s2.diag_val[t] >= prof.M)
                throw Error(ErrorKind::PrecisionExhausted, "invariant factor p^" + std::to_string(s2.diag_val[t]) +
                                                               " at level " + std::to_string(n) + " exceeds p^M");
        out = extract(s2, prof.p, prof.M, m, kc, want_kernel);
    } else {
        out = extract(s, prof.p, prof.M, m, kc, want_kernel);
    }
    out.rows = rows;
    out.cols = cols;
    return out;
}

inline LevelSlice level_slice(const PresentedModule& X, int n, bool want_kernel = false) {
    const auto& prof = X.profile();
    if (n > prof.N_max) throw Error(ErrorKind::LevelTooDeep, "level beyond N_max");
    prof.require_level(n);
    LevelSlice L;
    L.n = n;
    L.k = prof.omega_degree(n);
    for (const auto& [rows, cols] : components(X)) {
        L.comps.push_back(slice_component(X, rows, cols, n, want_kernel));
        L.free_W_corank += L.comps.back().free_count;
    }
    for (std::size_t c = 0; c < L.comps.size(); ++c)
        for (std::size_t i = 0; i < L.comps[c].orders.size(); ++i) L.tors.emplace_back(c, i);
    std::stable_sort(L.tors.begin(), L.tors.end(),
                     [&](const auto& a, const auto& b) { return L.comps[a.first].orders[a.second] > L.comps[b.first].orders[b.second]; });
    for (const auto& [c, i] : L.tors) L.orders.push_back(L.comps[c].orders[i]);
    return L;
}

/// Torsion coordinates (level ordering) of a vector given in component-local row coordinates.
inline std::vector<std::uint64_t> torsion_coords(const LevelSlice& L, std::size_t comp, const std::vector<std::uint64_t>& v,
                                                 const Zmod64& R) {
    std::vector<std::uint64_t> y(L.tors.size(), 0);
    for (std::size_t a = 0; a < L.tors.size(); ++a) {
        if (L.tors[a].first != comp) continue;
        const auto& f = L.comps[comp].funcs[L.tors[a].second];
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (f[i] != 0 && v[i] != 0) acc = R.add(acc, R.mul(f[i], v[i]));
        y[a] = acc % static_cast<std::uint64_t>(ipow_sat(R.prime(), L.orders[a]));
    }
    return y;
}

inline FiniteWTModule torsion_module(const PresentedModule& X, const LevelSlice& L) {
    const auto& prof = X.profile();
    const Zmod64 R(prof.p, prof.M);
    const auto om = omega_residues(R, prof.p, L.n);
    FiniteWTModule T;
    T.p = prof.p;
    T.orders = L.orders;
    for (const auto& [c, i] : L.tors) {
        std::vector<std::uint64_t> img = L.comps[c].gens[i];
        for (std::size_t b = 0; b < L.comps[c].rows.size(); ++b) mul_t(R, om, img.data() + b * L.k);
        T.t_action.push_back(torsion_coords(L, c, img, R));
    }
    return T;
}

/// Torsion coordinates at level N of the images of level-m torsion generators under omega_N/omega_m.
inline std::vector<std::vector<std::uint64_t>> push_forward(const PresentedModule& X, const LevelSlice& Lm, const LevelSlice& LN) {
    const auto& prof = X.profile();
    const Zmod64 R(prof.p, prof.M);
    const IntPoly q = omega_poly(prof.p, LN.n).exact_div(omega_poly(prof.p, Lm.n));
    std::vector<std::uint64_t> qc(q.coeffs().size());
    for (std::size_t i = 0; i < qc.size(); ++i) qc[i] = R.from_big(q.coeff(i));
    std::vector<std::vector<std::uint64_t>> out;
    for (const auto& [c, i] : Lm.tors) {
        const auto& g = Lm.comps[c].gens[i];
        const std::size_t nb = Lm.comps[c].rows.size();
        std::vector<std::uint64_t> v(nb * LN.k, 0);
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t i1 = 0; i1 < Lm.k; ++i1) {
                const std::uint64_t x = g[b * Lm.k + i1];
                if (x == 0) continue;
                for (std::size_t i2 = 0; i2 < qc.size(); ++i2)
                    if (qc[i2] != 0) v[b * LN.k + i1 + i2] = R.add(v[b * LN.k + i1 + i2], R.mul(x, qc[i2]));
            }
        out.push_back(torsion_coords(LN, c, v, R));
    }
    return out;
}

inline bool injective_presentation(const PresentedModule& X) {
    const std::size_t R = X.rows(), C = X.cols();
    if (C > R) return false;
    if (C == 0) return true;
    for (std::int64_t t0 : {2, 3, 5, 7, 11, 13}) {
        std::vector<std::vector<BigInt>> a(R, std::vector<BigInt>(C));
        for (std::size_t i = 0; i < R; ++i)
            for (std::size_t j = 0; j < C; ++j) a[i][j] = X.entry(i, j).eval(BigInt(t0));
        // fraction-free elimination; rank over Q
        std::size_t rank = 0;
        BigInt prev = 1;
        for (std::size_t col = 0; col < C && rank < R; ++col) {
            std::size_t piv = rank;
            while (piv < R && a[piv][col] == 0) ++piv;
            if (piv == R) continue;
            std::swap(a[piv], a[rank]);
            for (std::size_t i = rank + 1; i < R; ++i) {
                for (std::size_t j = col + 1; j < C; ++j) a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) / prev;
                a[i][col] = 0;
            }
            prev = a[rank][col];
            ++rank;
        }
        if (rank == C) return true;
    }
    return false;
}

}  // namespace detail

/// X / omega_n X as W-free part plus finite torsion with its T-action.
inline QuotientModule quotient_module(const PresentedModule& X, int n) {
    const auto L = detail::level_slice(X, n);
    return QuotientModule{L.free_W_corank, detail::torsion_module(X, L)};
}

/// e_n = log_p |(X / omega_n X)[p^inf]| for n = 1..N.
inline std::vector<std::int64_t> torsion_size_seq(const PresentedModule& X, int N) {
    std::vector<std::int64_t> e;
    for (int n = 1; n <= N; ++n) {
        const auto L = detail::level_slice(X, n);
        e.push_back(std::accumulate(L.orders.begin(), L.orders.end(), std::int64_t(0)));
    }
    return e;
}

/// Growth law of the inverse system (X/omega_n X)[p^inf] under the natural projections.
inline GrowthFit limit_G_invariants(const PresentedModule& X, int N) { return fit_growth(torsion_size_seq(X, N), X.profile().p); }

/// Matrix of multiplication by omega_{n+1}/omega_n from the torsion of level n to level n+1,
/// row convention (row i = image of generator i).
inline std::vector<std::vector<std::uint64_t>> transition_matrix(const PresentedModule& X, int n) {
    const auto Ln = detail::level_slice(X, n), Ln1 = detail::level_slice(X, n + 1);
    return detail::push_forward(X, Ln, Ln1);
}

/// log_p |image of (X/omega_m X)[p^inf] in (X/omega_N X)[p^inf]| for m = 1..N.
inline std::vector<std::int64_t> colimit_image_sizes(const PresentedModule& X, int N) {
    std::vector<detail::LevelSlice> Ls;
    for (int n = 1; n <= N; ++n) Ls.push_back(detail::level_slice(X, n));
    const auto& LN = Ls.back();
    std::vector<std::int64_t> s;
    for (int m = 1; m <= N; ++m) {
        const auto img = detail::push_forward(X, Ls[static_cast<std::size_t>(m - 1)], LN);
        s.push_back(subgroup_log_size(X.profile().p, LN.orders, img));
    }
    return s;
}

/// Growth law of the direct system under multiplication by omega_{n+1}/omega_n, read off from the
/// images of each level in the deepest one.
inline GrowthFit colimit_F_invariants(const PresentedModule& X, int N) { return fit_growth(colimit_image_sizes(X, N), X.profile().p); }

/// W-rank of X[omega_n], through X[omega_n] = ker(A mod omega_n) for an injective presentation A.
inline int omega_kernel_rank(const PresentedModule& X, int n) {
    if (!detail::injective_presentation(X)) throw Error(ErrorKind::InvalidInput, "presentation matrix is not injective");
    const auto L = detail::level_slice(X, n, true);
    int r = 0;
    for (const auto& c : L.comps) r += static_cast<int>(c.ker_basis.size());
    return r;
}

/// log_p of the image of the norm map X[omega_{n+m}] -> X[omega_n] inside X[omega_n] / p^c.
/// In the kernel picture the norm map is reduction of kernel vectors mod omega_n.
inline int norm_image_size(const PresentedModule& X, int n, int m, int c = 1) {
    if (!detail::injective_presentation(X)) throw Error(ErrorKind::InvalidInput, "presentation matrix is not injective");
    if (c < 1) throw Error(ErrorKind::InvalidInput, "probe exponent must be >= 1");
    const auto& prof = X.profile();
    const auto Ln = detail::level_slice(X, n, true), Lnm = detail::level_slice(X, n + m, true);
    for (const auto* L : {&Ln, &Lnm})
        for (const auto& comp : L->comps)
            if (c > prof.M - comp.max_pivot_val) throw Error(ErrorKind::PrecisionExhausted, "probe exponent too large for precision M");
    const Zmod64 R(prof.p, prof.M);
    const auto om = detail::omega_residues(R, prof.p, n);
    const std::uint64_t mc = static_cast<std::uint64_t>(ipow_sat(prof.p, c));
    std::size_t total = 0;
    std::vector<std::size_t> offset;
    for (const auto& comp : Ln.comps) {
        offset.push_back(total);
        total += comp.ker_basis.size();
    }
    std::vector<std::vector<std::uint64_t>> vecs;
    for (std::size_t ci = 0; ci < Lnm.comps.size(); ++ci) {
        const auto& big = Lnm.comps[ci];
        const auto& small = Ln.comps[ci];
        for (const auto& b : big.ker_basis) {
            std::vector<std::uint64_t> u(small.cols.size() * Ln.k);
            for (std::size_t col = 0; col < small.cols.size(); ++col) {
                std::vector<std::uint64_t> poly(b.begin() + static_cast<std::ptrdiff_t>(col * Lnm.k),
                                                b.begin() + static_cast<std::ptrdiff_t>((col + 1) * Lnm.k));
                const auto red = detail::reduce_mod_omega(R, om, std::move(poly));
                std::copy(red.begin(), red.end(), u.begin() + static_cast<std::ptrdiff_t>(col * Ln.k));
            }
            std::vector<std::uint64_t> z(total, 0);
            for (std::size_t t = 0; t < small.ker_coord.size(); ++t) {
                std::uint64_t acc = 0;
                for (std::size_t i = 0; i < u.size(); ++i)
                    if (u[i] != 0 && small.ker_coord[t][i] != 0) acc = R.add(acc, R.mul(u[i], small.ker_coord[t][i]));
                z[offset[ci] + t] = acc % mc;
            }
            vecs.push_back(std::move(z));
        }
    }
    return subgroup_log_size(prof.p, std::vector<int>(total, c), vecs);
}

}  // namespace iwa

#endif
