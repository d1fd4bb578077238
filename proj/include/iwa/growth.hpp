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

#ifndef IWA_GROWTH_HPP
#define IWA_GROWTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "profile.hpp"

namespace iwa {

/// e_n = mu * p^{n-1} + lambda * n + nu for all stable_from <= n <= len.
struct GrowthFit {
    std::int64_t mu = 0;
    std::int64_t lambda = 0;
    std::int64_t nu = 0;
    int stable_from = 1;

    std::int64_t predict(int n, std::uint64_t p) const {
        return mu * static_cast<std::int64_t>(ipow_sat(p, n - 1)) + lambda * n + nu;
    }
    friend bool operator==(const GrowthFit&, const GrowthFit&) = default;
};

/// Integer solve on the last three points, then walk back while the law stays exact.
/// seq[i] holds e_{i+1}.
inline GrowthFit fit_growth(const std::vector<std::int64_t>& seq, std::uint64_t p) {
    if (seq.size() < 4) throw Error(ErrorKind::InvalidInput, "growth fit needs at least 4 levels");
    const int N = static_cast<int>(seq.size());
    const int n = N - 2;  // levels n, n+1, n+2
    auto e = [&](int lvl) { return seq[static_cast<std::size_t>(lvl - 1)]; };
    auto pw = [&](int k) { return static_cast<std::int64_t>(ipow_sat(p, k)); };
    const std::int64_t d1 = e(n + 1) - e(n), d2 = e(n + 2) - e(n + 1);
    const std::int64_t step = pw(n - 1) * static_cast<std::int64_t>((p - 1) * (p - 1));
    const std::int64_t dd = d2 - d1;
    if (dd % step != 0) throw Error(ErrorKind::NoIntegerFit, "second difference not divisible by p^(n-1)(p-1)^2");
    GrowthFit f;
    f.mu = dd / step;
    f.lambda = d1 - f.mu * (pw(n) - pw(n - 1));
    f.nu = e(n) - f.mu * pw(n - 1) - f.lambda * n;
    if (f.mu < 0 || f.lambda < 0)
        throw Error(ErrorKind::NoIntegerFit, "tail fit gives negative mu or lambda (mu=" + std::to_string(f.mu) +
                                                 ", lambda=" + std::to_string(f.lambda) + ")");
    f.stable_from = n;
    while (f.stable_from > 1 && f.predict(f.stable_from - 1, p) == e(f.stable_from - 1)) --f.stable_from;
    return f;
}

}  // namespace iwa

#endif
