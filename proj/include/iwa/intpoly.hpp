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

#ifndef IWA_INTPOLY_HPP
#define IWA_INTPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "residue.hpp"

namespace iwa {

/// p-adic valuation of a nonzero integer.
inline int valuation(BigInt x, std::uint64_t p) {
    if (x == 0) throw Error(ErrorKind::InvalidInput, "valuation of zero");
    if (x < 0) x = -x;
    int v = 0;
    const BigInt bp(p);
    while (x % bp == 0) {
        x /= bp;
        ++v;
    }
    return v;
}

/// Exact polynomial over Z, coefficients low-to-high, no trailing zeros.
class IntPoly {
   public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<std::int64_t> coeffs) {
        for (auto v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntPoly constant(const BigInt& v) { return IntPoly(std::vector<BigInt>{v}); }
    static IntPoly monomial(std::size_t k, const BigInt& v = 1) {
        std::vector<BigInt> c(k + 1);
        c[k] = v;
        return IntPoly(std::move(c));
    }

    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const noexcept { return c_; }
    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
    const BigInt& leading() const { return c_.back(); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a) { return IntPoly() - a; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const BigInt& s, const IntPoly& a) {
        std::vector<BigInt> r = a.c_;
        for (auto& x : r) x *= s;
        return IntPoly(std::move(r));
    }
    friend bool operator==(const IntPoly&, const IntPoly&) = default;

    IntPoly pow(unsigned e) const {
        IntPoly r = IntPoly::constant(1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    BigInt eval(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Division with remainder by a monic polynomial.
    std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& g) const {
        if (g.is_zero() || g.leading() != 1) throw Error(ErrorKind::InvalidInput, "divisor must be monic");
        std::vector<BigInt> r = c_;
        const int dg = g.degree();
        if (degree() < dg) return {IntPoly(), *this};
        std::vector<BigInt> q(static_cast<std::size_t>(degree() - dg + 1));
        for (int i = degree(); i >= dg; --i) {
            const BigInt t = r[static_cast<std::size_t>(i)];
            if (t == 0) continue;
            q[static_cast<std::size_t>(i - dg)] = t;
            for (int j = 0; j <= dg; ++j) r[static_cast<std::size_t>(i - dg + j)] -= t * g.c_[static_cast<std::size_t>(j)];
        }
        return {IntPoly(std::move(q)), IntPoly(std::move(r))};
    }

    /// Exact division by a monic polynomial; throws when the remainder is nonzero.
    IntPoly exact_div(const IntPoly& g) const {
        auto [q, r] = divmod_monic(g);
        if (!r.is_zero()) throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
        return q;
    }

    /// Exact division over Z[T] by an arbitrary nonzero divisor (used by fraction-free elimination).
    IntPoly exact_div_general(const IntPoly& g) const {
        std::vector<BigInt> r = c_;
        const int dg = g.degree();
        if (is_zero()) return {};
        if (degree() < dg) throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
        std::vector<BigInt> q(static_cast<std::size_t>(degree() - dg + 1));
        for (int i = degree(); i >= dg; --i) {
            const BigInt t = r[static_cast<std::size_t>(i)];
            if (t == 0) continue;
            if (t % g.leading() != 0) throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
            const BigInt qi = t / g.leading();
            q[static_cast<std::size_t>(i - dg)] = qi;
            for (int j = 0; j <= dg; ++j) r[static_cast<std::size_t>(i - dg + j)] -= qi * g.c_[static_cast<std::size_t>(j)];
        }
        for (const auto& x : r)
            if (x != 0) throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
        return IntPoly(std::move(q));
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& x = c_[static_cast<std::size_t>(i)];
            if (x == 0) continue;
            if (!s.empty()) s += x < 0 ? " - " : " + ";
            else if (x < 0) s += "-";
            const BigInt ax = x < 0 ? BigInt(-x) : x;
            if (i == 0 || ax != 1) s += ax.str();
            if (i >= 1) s += (i == 0 || ax != 1) ? "*T" : "T";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<BigInt> c_;
};

/// Monic polynomial with all non-leading coefficients divisible by p.
class DistPoly {
   public:
    DistPoly(IntPoly poly, std::uint64_t p) : poly_(std::move(poly)), p_(p) {
        // degree 0 only admits the constant 1 (the distinguished part of a unit)
        if (poly_.degree() < 0) throw Error(ErrorKind::InvalidInput, "distinguished polynomial cannot be zero");
        if (poly_.leading() != 1) throw Error(ErrorKind::InvalidInput, "distinguished polynomial must be monic");
        for (int i = 0; i < poly_.degree(); ++i)
            if (poly_.coeff(static_cast<std::size_t>(i)) % BigInt(p) != 0)
                throw Error(ErrorKind::InvalidInput, "non-leading coefficient not divisible by p: " + poly_.to_string());
    }

    const IntPoly& poly() const noexcept { return poly_; }
    const std::vector<BigInt>& coeffs() const noexcept { return poly_.coeffs(); }
    int degree() const noexcept { return poly_.degree(); }
    std::uint64_t prime() const noexcept { return p_; }

    friend bool operator==(const DistPoly& a, const DistPoly& b) { return a.p_ == b.p_ && a.poly_ == b.poly_; }

   private:
    IntPoly poly_;
    std::uint64_t p_;
};

/// (1+T)^{p^{n-1}} - 1 as an exact polynomial, no precision checks.
inline IntPoly omega_poly(std::uint64_t p, int n) {
    const auto k = static_cast<std::size_t>(ipow_sat(p, n - 1));
    std::vector<BigInt> c(k + 1);
    BigInt binom = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        binom = binom * BigInt(k - i + 1) / BigInt(i);
        c[i] = binom;
    }
    return IntPoly(std::move(c));
}

inline DistPoly make_omega(int n, const PrecisionProfile& prof) {
    prof.require_level(n);
    return DistPoly(omega_poly(prof.p, n), prof.p);
}

/// nu_0 = T; nu_a = omega_{a+1}/omega_a for a >= 1.
inline DistPoly cyclo_nu(int a, const PrecisionProfile& prof) {
    if (a < 0) throw Error(ErrorKind::InvalidInput, "cyclotomic level must be >= 0");
    prof.require_level(a + 1);
    if (a == 0) return DistPoly(IntPoly{0, 1}, prof.p);
    return DistPoly(omega_poly(prof.p, a + 1).exact_div(omega_poly(prof.p, a)), prof.p);
}

/// Determinant of the Sylvester matrix of f and g (both nonzero), by fraction-free elimination.
inline BigInt sylvester_determinant(const IntPoly& f, const IntPoly& g) {
    const int m = f.degree(), n = g.degree();
    const int size = m + n;
    if (size == 0) return 1;
    std::vector<std::vector<BigInt>> a(static_cast<std::size_t>(size), std::vector<BigInt>(static_cast<std::size_t>(size)));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) a[r][r + j] = f.coeff(static_cast<std::size_t>(m - j));
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) a[n + r][r + j] = g.coeff(static_cast<std::size_t>(n - j));
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < size - 1; ++k) {
        if (a[k][k] == 0) {
            int sw = -1;
            for (int r = k + 1; r < size; ++r)
                if (a[r][k] != 0) {
                    sw = r;
                    break;
                }
            if (sw < 0) return 0;
            std::swap(a[k], a[sw]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i)
            for (int j = k + 1; j < size; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[size - 1][size - 1];
}

/// v_p(Res(g, h)); nullopt stands for INFINITE (shared factor).
inline std::optional<int> resultant_valuation(const DistPoly& g, const DistPoly& h) {
    const DistPoly& small = g.degree() <= h.degree() ? g : h;
    const DistPoly& large = g.degree() <= h.degree() ? h : g;
    // Res(s, l) = +-Res(s, l mod s) because s is monic.
    const IntPoly r = large.poly().divmod_monic(small.poly()).second;
    if (r.is_zero()) return std::nullopt;
    const BigInt res = sylvester_determinant(small.poly(), r);
    if (res == 0) return std::nullopt;
    return valuation(res, g.prime());
}

}  // namespace iwa

#endif
