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

#ifndef IWA_SNF_HPP
#define IWA_SNF_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "residue.hpp"

namespace iwa {

/// Dense row-major matrix over a residue ring.
template <class Word>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<Word> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Word(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    Word& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Word& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    Word* row(std::size_t i) { return a.data() + i * cols; }
    const Word* row(std::size_t i) const { return a.data() + i * cols; }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols; ++c) std::swap(a[i * cols + c], a[j * cols + c]);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows; ++r) std::swap(a[r * cols + i], a[r * cols + j]);
    }
};

template <class Word>
Mat<Word> mat_mul(const Zmod<Word>& R, const Mat<Word>& x, const Mat<Word>& y) {
    Mat<Word> z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t l = 0; l < x.cols; ++l) {
            const Word s = x(i, l);
            if (s == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                if (y(l, j) != 0) z(i, j) = R.add(z(i, j), R.mul(s, y(l, j)));
        }
    return z;
}

template <class Word>
Mat<Word> transpose(const Mat<Word>& x) {
    Mat<Word> t(x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) t(j, i) = x(i, j);
    return t;
}

/// U * A * V = diag(p^{v_0}, p^{v_1}, ...), v_t nondecreasing, K marking a zero pivot.
template <class Word>
struct SnfResult {
    std::vector<int> diag_val;  // length min(rows, cols)
    std::size_t rank = 0;       // number of pivots that are nonzero mod p^K
    Mat<Word> U, UinvT;         // U^{-1} is kept transposed: its columns are the new generators
    Mat<Word> V, Vinv;
};

struct SnfOptions {
    bool track_u = true;
    bool track_v = false;
};

namespace detail {

template <class Word>
void row_axpy(const Zmod<Word>& R, Word* dst, const Word* src, Word s, std::size_t n) {
    // dst -= s * src
    for (std::size_t j = 0; j < n; ++j)
        if (src[j] != 0) dst[j] = R.sub(dst[j], R.mul(s, src[j]));
}

template <class Word>
void row_add(const Zmod<Word>& R, Word* dst, const Word* src, Word s, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j)
        if (src[j] != 0) dst[j] = R.add(dst[j], R.mul(s, src[j]));
}

}  // namespace detail

/// Smith normal form over Z/p^K by minimum-valuation pivoting.
template <class Word>
SnfResult<Word> smith_normal_form(const Zmod<Word>& R, Mat<Word> A, SnfOptions opt = {}) {
    const std::size_t m = A.rows, k = A.cols, steps = std::min(m, k);
    const int K = R.exponent();
    SnfResult<Word> res;
    if (opt.track_u) {
        res.U = Mat<Word>::identity(m);
        res.UinvT = Mat<Word>::identity(m);
    }
    if (opt.track_v) res.Vinv = Mat<Word>::identity(k);
    res.diag_val.assign(steps, K);
    // VT holds V transposed so column operations on V become row operations.
    Mat<Word> VT = opt.track_v ? Mat<Word>::identity(k) : Mat<Word>();
    std::vector<std::size_t> nz;
    for (std::size_t t = 0; t < steps; ++t) {
        int best = K;
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < m && best > 0; ++i) {
            const Word* r = A.row(i);
            for (std::size_t j = t; j < k; ++j) {
                if (r[j] == 0) continue;
                const int v = R.val(r[j]);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                    if (v == 0) break;
                }
            }
        }
        if (best == K) break;
        A.swap_rows(t, bi);
        A.swap_cols(t, bj);
        if (opt.track_u) {
            res.U.swap_rows(t, bi);
            res.UinvT.swap_rows(t, bi);
        }
        if (opt.track_v) {
            VT.swap_rows(t, bj);
            res.Vinv.swap_rows(t, bj);
        }
        // normalize the pivot to p^best
        const Word unit = R.div_pow(A(t, t), best);
        if (unit != 1) {
            const Word w = R.inv(unit);
            Word* rt = A.row(t);
            for (std::size_t j = t; j < k; ++j)
                if (rt[j] != 0) rt[j] = R.mul(rt[j], w);
            if (opt.track_u) {
                Word* u = res.U.row(t);
                for (std::size_t j = 0; j < m; ++j)
                    if (u[j] != 0) u[j] = R.mul(u[j], w);
                Word* ui = res.UinvT.row(t);
                for (std::size_t j = 0; j < m; ++j)
                    if (ui[j] != 0) ui[j] = R.mul(ui[j], unit);
            }
        }
        nz.clear();
        for (std::size_t j = t; j < k; ++j)
            if (A(t, j) != 0) nz.push_back(j);
        const Word* rt = A.row(t);
        for (std::size_t i = t + 1; i < m; ++i) {
            Word* ri = A.row(i);
            if (ri[t] == 0) continue;
            const Word s = R.div_pow(ri[t], best);
            for (std::size_t j : nz) ri[j] = R.sub(ri[j], R.mul(s, rt[j]));
            if (opt.track_u) {
                detail::row_axpy(R, res.U.row(i), res.U.row(t), s, m);
                // Uinv column t += s * column i
                detail::row_add(R, res.UinvT.row(t), res.UinvT.row(i), s, m);
            }
        }
        // clear the rest of row t by column operations; only row t changes in A
        for (std::size_t j : nz) {
            if (j == t) continue;
            const Word s = R.div_pow(A(t, j), best);
            A(t, j) = 0;
            if (opt.track_v) {
                detail::row_axpy(R, VT.row(j), VT.row(t), s, k);
                // Vinv row t += s * row j
                detail::row_add(R, res.Vinv.row(t), res.Vinv.row(j), s, k);
            }
        }
        res.diag_val[t] = best;
        ++res.rank;
    }
    if (opt.track_v) res.V = transpose(VT);
    return res;
}

}  // namespace iwa

#endif
