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

#ifndef IWA_PROFILE_HPP
#define IWA_PROFILE_HPP

#include <cstdint>
#include <string>

#include "error.hpp"

namespace iwa {

using u128 = unsigned __int128;

/// Integer power with overflow saturation at 2^127.
constexpr u128 ipow_sat(std::uint64_t base, int exp) noexcept {
    u128 r = 1;
    const u128 cap = u128(1) << 127;
    for (int i = 0; i < exp; ++i) {
        if (r > cap / base) return cap;
        r *= base;
    }
    return r;
}

constexpr bool is_prime_u64(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Working precision for Lambda = Z_p[[T]]: coefficients modulo p^M, series truncated at T^D,
/// tower levels 1..N_max (needs deg omega_{N_max} = p^{N_max-1} < D).
struct PrecisionProfile {
    std::uint64_t p = 5;
    int M = 16;
    int D = 128;
    int N_max = 4;

    /// p^M; always below 2^62 for a validated profile.
    std::uint64_t modulus() const { return static_cast<std::uint64_t>(ipow_sat(p, M)); }

    /// deg omega_n = p^{n-1}
    std::uint64_t omega_degree(int n) const { return static_cast<std::uint64_t>(ipow_sat(p, n - 1)); }

    void validate() const {
        if (p < 3 || !is_prime_u64(p)) throw Error(ErrorKind::InvalidInput, "p must be an odd prime");
        if (M < 1) throw Error(ErrorKind::InvalidInput, "M must be >= 1");
        if (D < 2) throw Error(ErrorKind::InvalidInput, "D must be >= 2");
        if (N_max < 1) throw Error(ErrorKind::InvalidInput, "N_max must be >= 1");
        if (ipow_sat(p, M) >= (u128(1) << 62))
            throw Error(ErrorKind::InvalidInput, "p^M must stay below 2^62");
        if (ipow_sat(p, 2 * M) >= (u128(1) << 96))
            throw Error(ErrorKind::InvalidInput, "p^(2M) must stay below 2^96 for the doubled-precision recheck");
        if (ipow_sat(p, N_max - 1) >= static_cast<u128>(D))
            throw Error(ErrorKind::InvalidInput, "p^(N_max-1) must be < D");
    }

    /// Throws level-too-deep unless omega_n is representable below T^D.
    void require_level(int n) const {
        if (n < 1) throw Error(ErrorKind::InvalidInput, "level must be >= 1");
        if (ipow_sat(p, n - 1) >= static_cast<u128>(D))
            throw Error(ErrorKind::LevelTooDeep, "p^(n-1) >= D at level " + std::to_string(n));
    }

    friend bool operator==(const PrecisionProfile&, const PrecisionProfile&) = default;
};

}  // namespace iwa

#endif
