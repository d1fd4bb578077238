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

// Shared generators for the test suites.
#ifndef IWA_TESTS_SUPPORT_HPP
#define IWA_TESTS_SUPPORT_HPP

#include <random>

#include "iwa/elementary.hpp"

namespace iwa::testing {

inline PrecisionProfile prof5() { return PrecisionProfile{5, 16, 128, 4}; }

inline std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); }

inline DistPoly random_dist(const PrecisionProfile& prof, std::mt19937_64& rng, int max_deg, std::uint64_t coeff_bound = 0) {
    const int d = static_cast<int>(uniform(rng, 1, static_cast<std::uint64_t>(max_deg)));
    std::vector<BigInt> c(static_cast<std::size_t>(d + 1));
    const std::uint64_t bound = coeff_bound ? coeff_bound : prof.modulus() / prof.p;
    for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = BigInt(prof.p) * BigInt(rng() % bound);
    c[static_cast<std::size_t>(d)] = 1;
    return DistPoly(IntPoly(std::move(c)), prof.p);
}

/// Distinguished polynomial not divisible by any nu_a (a <= N_max).
inline DistPoly random_generic(const PrecisionProfile& prof, std::mt19937_64& rng, int max_deg, std::uint64_t coeff_bound = 0) {
    for (;;) {
        DistPoly g = random_dist(prof, rng, max_deg, coeff_bound);
        bool ok = true;
        for (int a = 0; a <= prof.N_max && ok; ++a) ok = !divides_nu(g, a, prof);
        if (ok) return g;
    }
}

struct ModuleShape {
    int max_free = 2;
    int max_factors = 3;
    int max_exp = 3;
    int max_generic_deg = 3;
    int max_cyclo_level = 2;
    bool allow_cyclo = true;
    bool allow_free = true;
};

inline ElementaryModule random_elementary(const PrecisionProfile& prof, std::mt19937_64& rng, const ModuleShape& s = {}) {
    const int r = s.allow_free ? static_cast<int>(uniform(rng, 0, static_cast<std::uint64_t>(s.max_free))) : 0;
    const int nf = static_cast<int>(uniform(rng, 0, static_cast<std::uint64_t>(s.max_factors)));
    std::vector<Factor> fs;
    for (int i = 0; i < nf; ++i) {
        const int e = static_cast<int>(uniform(rng, 1, static_cast<std::uint64_t>(s.max_exp)));
        const auto kind = uniform(rng, 0, s.allow_cyclo ? 2 : 1);
        if (kind == 0) fs.push_back(PPower{e});
        else if (kind == 1) fs.push_back(Generic{random_generic(prof, rng, s.max_generic_deg), e});
        else fs.push_back(Cyclo{static_cast<int>(uniform(rng, 0, static_cast<std::uint64_t>(s.max_cyclo_level))), e});
    }
    return ElementaryModule(prof, r, std::move(fs));
}

}  // namespace iwa::testing

#endif
