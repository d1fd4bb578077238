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

#ifndef IWA_RESIDUE_HPP
#define IWA_RESIDUE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <type_traits>

#include "profile.hpp"

namespace iwa {

using BigInt = boost::multiprecision::cpp_int;

/// Arithmetic in Z/p^K with canonical representatives in [0, p^K).
/// Word = std::uint64_t needs p^K < 2^62; Word = u128 needs p^K < 2^96.
template <class Word>
class Zmod {
    static_assert(std::is_same_v<Word, std::uint64_t> || std::is_same_v<Word, u128>);

   public:
    using value_type = Word;

    Zmod(std::uint64_t p, int K) : p_(p), K_(K), m_(static_cast<Word>(ipow_sat(p, K))) {
        if constexpr (std::is_same_v<Word, std::uint64_t>) {
            if (ipow_sat(p, K) >= (u128(1) << 62)) throw Error(ErrorKind::InvalidInput, "modulus too large for 64-bit ring");
        } else {
            if (ipow_sat(p, K) >= (u128(1) << 96)) throw Error(ErrorKind::InvalidInput, "modulus too large for 128-bit ring");
            if (m_ > (u128(1) << 64)) {
                const BigInt mu = (BigInt(1) << 192) / to_big(m_);
                mu_ = from_big_nonneg(mu);
            }
        }
        if (m_ < (u128(1) << 62)) inv_ = 1.0L / static_cast<long double>(static_cast<std::uint64_t>(m_));
    }

    std::uint64_t prime() const noexcept { return p_; }
    int exponent() const noexcept { return K_; }
    Word modulus() const noexcept { return m_; }

    Word add(Word a, Word b) const noexcept {
        Word s = a + b;
        return s >= m_ ? s - m_ : s;
    }
    Word sub(Word a, Word b) const noexcept { return a >= b ? a - b : a + (m_ - b); }
    Word neg(Word a) const noexcept { return a == 0 ? 0 : m_ - a; }

    Word mul(Word a, Word b) const noexcept {
        if constexpr (std::is_same_v<Word, std::uint64_t>) {
            return mul_small(a, b);
        } else {
            if (m_ < (u128(1) << 62)) return mul_small(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
            if (m_ <= (u128(1) << 64)) return (a * b) % m_;
            return mul_barrett(a, b);
        }
    }

    Word mul_add(Word acc, Word a, Word b) const noexcept { return add(acc, mul(a, b)); }

    /// p-adic valuation of a residue, K for zero.
    int val(Word a) const noexcept {
        if (a == 0) return K_;
        int v = 0;
        while (a % p_ == 0) {
            a /= p_;
            ++v;
        }
        return v;
    }

    bool is_unit(Word a) const noexcept { return a % p_ != 0; }

    Word pow_p(int v) const noexcept { return v >= K_ ? Word(0) : static_cast<Word>(ipow_sat(p_, v)); }

    /// a / p^v for a with val(a) >= v; the quotient is a valid lift of the residue mod p^(K-v).
    Word div_pow(Word a, int v) const noexcept { return a / static_cast<Word>(ipow_sat(p_, v)); }

    Word pow(Word a, std::uint64_t e) const noexcept {
        Word r = m_ == 1 ? 0 : 1, b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    /// Inverse of a unit by Fermat mod p then Newton lifting.
    Word inv(Word a) const {
        if (!is_unit(a)) throw Error(ErrorKind::NonInvertible, "residue is not a unit");
        Word x = static_cast<Word>(Zmod<std::uint64_t>::pow_small(static_cast<std::uint64_t>(a % p_), p_ - 2, p_));
        for (int prec = 1; prec < K_; prec *= 2) x = mul(x, sub(2 % m_, mul(a, x)));
        return x;
    }

    Word from_i64(std::int64_t v) const noexcept {
        if (v >= 0) return static_cast<Word>(static_cast<u128>(v) % m_);
        const Word r = static_cast<Word>(static_cast<u128>(-(v + 1)) % m_);
        return sub(m_ - 1, r);
    }

    Word from_big(const BigInt& v) const {
        BigInt r = v % BigInt(to_big(m_));
        if (r < 0) r += BigInt(to_big(m_));
        return from_big_nonneg(r);
    }

    static BigInt to_big(Word w) {
        if constexpr (std::is_same_v<Word, std::uint64_t>) {
            return BigInt(w);
        } else {
            BigInt hi = BigInt(static_cast<std::uint64_t>(w >> 64));
            return (hi << 64) + BigInt(static_cast<std::uint64_t>(w));
        }
    }

    static std::uint64_t pow_small(std::uint64_t a, std::uint64_t e, std::uint64_t m) noexcept {
        std::uint64_t r = 1 % m;
        a %= m;
        while (e) {
            if (e & 1) r = static_cast<std::uint64_t>(u128(r) * a % m);
            a = static_cast<std::uint64_t>(u128(a) * a % m);
            e >>= 1;
        }
        return r;
    }

   private:
    // m < 2^62: quotient estimate in extended precision, off by at most one.
    std::uint64_t mul_small(std::uint64_t a, std::uint64_t b) const noexcept {
        const auto m = static_cast<std::uint64_t>(m_);
        const auto q = static_cast<std::uint64_t>(static_cast<long double>(a) * b * inv_);
        auto r = static_cast<std::int64_t>(a * b - q * m);
        if (r < 0) r += static_cast<std::int64_t>(m);
        else if (r >= static_cast<std::int64_t>(m)) r -= static_cast<std::int64_t>(m);
        if (r < 0) r += static_cast<std::int64_t>(m);
        else if (r >= static_cast<std::int64_t>(m)) r -= static_cast<std::int64_t>(m);
        return static_cast<std::uint64_t>(r);
    }

    // 2^64 < m < 2^96: Barrett with mu = floor(2^192 / m).
    u128 mul_barrett(u128 a, u128 b) const noexcept {
        using std::uint64_t;
        const uint64_t a0 = static_cast<uint64_t>(a), a1 = static_cast<uint64_t>(a >> 64);
        const uint64_t b0 = static_cast<uint64_t>(b), b1 = static_cast<uint64_t>(b >> 64);
        const u128 lo = u128(a0) * b0;
        const u128 mid = u128(a0) * b1 + u128(a1) * b0;  // < 2^97
        const u128 hi = u128(a1) * b1;                    // < 2^64
        uint64_t x[3];
        x[0] = static_cast<uint64_t>(lo);
        u128 t = (lo >> 64) + static_cast<uint64_t>(mid);
        x[1] = static_cast<uint64_t>(t);
        t = (t >> 64) + (mid >> 64) + hi;
        x[2] = static_cast<uint64_t>(t);
        const uint64_t u[2] = {static_cast<uint64_t>(mu_), static_cast<uint64_t>(mu_ >> 64)};
        uint64_t P[5] = {0, 0, 0, 0, 0};
        for (int i = 0; i < 3; ++i) {
            u128 carry = 0;
            for (int j = 0; j < 2; ++j) {
                const u128 cur = u128(x[i]) * u[j] + P[i + j] + carry;
                P[i + j] = static_cast<uint64_t>(cur);
                carry = cur >> 64;
            }
            P[i + 2] = static_cast<uint64_t>(carry);
        }
        const u128 q = (u128(P[4]) << 64) | P[3];
        const u128 xl = (u128(x[1]) << 64) | x[0];
        u128 r = xl - q * m_;
        while (r >= m_) r -= m_;
        return r;
    }

    static Word from_big_nonneg(const BigInt& r) {
        if constexpr (std::is_same_v<Word, std::uint64_t>) {
            return static_cast<std::uint64_t>(r);
        } else {
            const BigInt mask = (BigInt(1) << 64) - 1;
            const auto lo = static_cast<std::uint64_t>(r & mask);
            const auto hi = static_cast<std::uint64_t>(r >> 64);
            return (u128(hi) << 64) | lo;
        }
    }

    std::uint64_t p_;
    int K_;
    Word m_;
    long double inv_ = 0;
    u128 mu_ = 0;
};

using Zmod64 = Zmod<std::uint64_t>;
using Zmod128 = Zmod<u128>;

}  // namespace iwa

#endif
