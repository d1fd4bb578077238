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

#ifndef IWA_WEIERSTRASS_HPP
#define IWA_WEIERSTRASS_HPP

#include <optional>
#include <vector>

#include "series.hpp"

namespace iwa {

struct DivisionResult {
    RingElem quotient;
    RingElem remainder;  // degree < deg P
    /// p-adic digits of the remainder that do not depend on coefficients beyond T^D:
    /// min(M, floor(D / deg P)). Inputs that are polynomials of degree < D are exact to p^M.
    int certain_digits = 0;

    bool remainder_vanishes_to_certain_digits() const {
        const Zmod64 R = remainder.ring();
        for (auto c : remainder.coeffs())
            if (R.val(c) < certain_digits) return false;
        return true;
    }
};

struct PrepResult {
    int mu = 0;
    RingElem unit;
    DistPoly dist;
};

namespace detail {

inline RingElem shift_down(const RingElem& f, std::size_t d) {
    RingElem r(f.profile());
    for (std::size_t i = d; i < f.size(); ++i) r[i - d] = f[i];
    return r;
}

inline RingElem low_part(const RingElem& f, std::size_t d) {
    RingElem r(f.profile());
    for (std::size_t i = 0; i < d && i < f.size(); ++i) r[i] = f[i];
    return r;
}

}  // namespace detail

/// f = q*P + r modulo (p^M, T^D) with deg r < deg P.
inline DivisionResult weierstrass_divide(const RingElem& f, const DistPoly& P, const PrecisionProfile& prof) {
    if (P.degree() >= prof.D) throw Error(ErrorKind::InsufficientTPrecision, "deg P >= D");
    const auto d = static_cast<std::size_t>(P.degree());
    // P = T^d + low, low = 0 mod p, so each round gains one p-adic digit.
    RingElem low = detail::low_part(RingElem::from_dist(prof, P), d);
    RingElem q(prof), r(prof), cur = f;
    for (int round = 0; round <= prof.M && !cur.is_zero(); ++round) {
        RingElem q0 = detail::shift_down(cur, d);
        r = r + detail::low_part(cur, d);
        q = q + q0;
        cur = -(q0 * low);
    }
    const int certain = std::min(prof.M, prof.D / P.degree());
    return {std::move(q), std::move(r), certain};
}

/// f = p^mu * unit * dist modulo (p^M, T^D).
/// The input is read as a polynomial of degree < D (coefficients beyond T^D are zero); the
/// unit is then the truncation of the exact Weierstrass unit of that polynomial.
inline PrepResult weierstrass_prepare(const RingElem& f, const PrecisionProfile& prof) {
    const int mu = f.min_valuation();
    if (mu >= prof.M) throw Error(ErrorKind::InsufficientPPrecision, "series vanishes modulo p^M");
    const Zmod64 R = f.ring();
    std::size_t d = 0;
    while (d < f.size() && R.val(f[d]) != mu) ++d;
    if (d >= f.size()) throw Error(ErrorKind::InsufficientTPrecision, "no unit coefficient below T^D");

    // Each fixed-point round moves truncation error down by d positions, so work at length
    // D + d*(M+1) and cut back to D at the end.
    PrecisionProfile wide = prof;
    wide.D = prof.D + static_cast<int>(d) * (prof.M + 1);
    RingElem g(wide);
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = R.div_pow(f[i], mu);

    const RingElem B = detail::low_part(g, d);
    const RingElem Cinv = detail::shift_down(g, d).inverse();
    RingElem Td(wide);
    Td[d] = 1;
    // q*g = T^d - rem with deg rem < d; then P = T^d - rem and unit = q^{-1}.
    RingElem q(wide);
    for (int round = 0; round <= prof.M + 1; ++round) {
        RingElem next = Cinv * detail::shift_down(Td - q * B, d);
        if (next == q) break;
        q = std::move(next);
    }
    const RingElem rem = detail::low_part(Td - q * B, d);
    std::vector<BigInt> pc(d + 1);
    for (std::size_t i = 0; i < d; ++i) pc[i] = R.neg(rem[i]);
    pc[d] = 1;
    const RingElem unit_wide = q.inverse();
    RingElem unit(prof);
    for (std::size_t i = 0; i < unit.size(); ++i) unit[i] = unit_wide[i];
    return {mu, std::move(unit), DistPoly(IntPoly(std::move(pc)), prof.p)};
}

/// f(T) -> f(-T/(1+T)) truncated at T^D.
inline RingElem iota_series(const RingElem& f, const PrecisionProfile& prof) {
    const Zmod64 R = f.ring();
    const std::size_t D = f.size();
    RingElem out(prof);
    out[0] = f[0];
    // coefficient k >= 1 is (-1)^k * sum_{i=1..k} c_i * binom(k-1, i-1)
    std::vector<std::uint64_t> row{1 % R.modulus()};
    for (std::size_t k = 1; k < D; ++k) {
        std::uint64_t s = 0;
        for (std::size_t i = 1; i <= k; ++i)
            if (f[i]) s = R.mul_add(s, f[i], row[i - 1]);
        out[k] = (k % 2) ? R.neg(s) : s;
        std::vector<std::uint64_t> next(row.size() + 1);
        next[0] = row[0];
        next[row.size()] = row.back();
        for (std::size_t j = 1; j < row.size(); ++j) next[j] = R.add(row[j - 1], row[j]);
        row = std::move(next);
    }
    return out;
}

/// Distinguished generator of the ideal (iota(P)), coefficients lifted from [0, p^M).
inline DistPoly iota_dist(const DistPoly& P, const PrecisionProfile& prof) {
    if (P.degree() >= prof.D) throw Error(ErrorKind::InsufficientTPrecision, "deg P >= D");
    const int d = P.degree();
    const IntPoly one_plus_t{1, 1};
    const IntPoly minus_t{0, -1};
    IntPoly q;
    for (int i = 0; i <= d; ++i) {
        const BigInt& c = P.poly().coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        q = q + c * (minus_t.pow(static_cast<unsigned>(i)) * one_plus_t.pow(static_cast<unsigned>(d - i)));
    }
    return weierstrass_prepare(RingElem::from_poly(prof, q), prof).dist;
}

inline bool same_residues(const DistPoly& a, const DistPoly& b, const PrecisionProfile& prof) {
    if (a.degree() != b.degree()) return false;
    const Zmod64 R(prof.p, prof.M);
    for (int i = 0; i <= a.degree(); ++i)
        if (R.from_big(a.poly().coeff(static_cast<std::size_t>(i))) != R.from_big(b.poly().coeff(static_cast<std::size_t>(i))))
            return false;
    return true;
}

/// True when nu_a divides P at working precision.
inline bool divides_nu(const DistPoly& P, int a, const PrecisionProfile& prof) {
    const auto nu_deg = a == 0 ? std::uint64_t(1) : prof.omega_degree(a + 1) - prof.omega_degree(a);
    if (static_cast<std::uint64_t>(P.degree()) < nu_deg) return false;
    const DistPoly nu = cyclo_nu(a, prof);
    if (P.degree() >= prof.D) throw Error(ErrorKind::InsufficientTPrecision, "deg P >= D");
    return weierstrass_divide(RingElem::from_dist(prof, P), nu, prof).remainder.is_zero();
}

/// Level a with P = nu_a (compared modulo p^M), if any, for a <= N_max.
inline std::optional<int> classify_cyclo(const DistPoly& P, const PrecisionProfile& prof) {
    for (int a = 0; a <= prof.N_max; ++a) {
        const auto nu_deg = a == 0 ? std::uint64_t(1) : prof.omega_degree(a + 1) - prof.omega_degree(a);
        if (nu_deg > static_cast<std::uint64_t>(P.degree())) break;
        if (nu_deg != static_cast<std::uint64_t>(P.degree())) continue;
        if (same_residues(P, DistPoly(a == 0 ? IntPoly{0, 1} : omega_poly(prof.p, a + 1).exact_div(omega_poly(prof.p, a)), prof.p), prof))
            return a;
    }
    return std::nullopt;
}

}  // namespace iwa

#endif
