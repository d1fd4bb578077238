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

#ifndef IWA_ELEMENTARY_HPP
#define IWA_ELEMENTARY_HPP

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "weierstrass.hpp"

namespace iwa {

/// Lambda / p^f
struct PPower {
    int f = 1;
    friend bool operator==(const PPower&, const PPower&) = default;
};

/// Lambda / g^e with g distinguished and not divisible by any nu_a, a <= N_max.
struct Generic {
    DistPoly g;
    int e = 1;
    friend bool operator==(const Generic&, const Generic&) = default;
};

/// Lambda / nu_a^e
struct Cyclo {
    int a = 0;
    int e = 1;
    friend bool operator==(const Cyclo&, const Cyclo&) = default;
};

using Factor = std::variant<PPower, Generic, Cyclo>;

inline std::uint64_t nu_degree(int a, std::uint64_t p) {
    return a == 0 ? 1 : static_cast<std::uint64_t>(ipow_sat(p, a) - ipow_sat(p, a - 1));
}

inline bool factor_less(const Factor& x, const Factor& y) {
    if (x.index() != y.index()) return x.index() < y.index();
    if (auto a = std::get_if<PPower>(&x)) return a->f < std::get<PPower>(y).f;
    if (auto a = std::get_if<Cyclo>(&x)) {
        const auto& b = std::get<Cyclo>(y);
        return std::tie(a->a, a->e) < std::tie(b.a, b.e);
    }
    const auto& a = std::get<Generic>(x);
    const auto& b = std::get<Generic>(y);
    if (a.g.degree() != b.g.degree()) return a.g.degree() < b.g.degree();
    if (a.g.coeffs() != b.g.coeffs())
        return std::lexicographical_compare(a.g.coeffs().begin(), a.g.coeffs().end(), b.g.coeffs().begin(), b.g.coeffs().end());
    return a.e < b.e;
}

/// Lambda^r plus a multiset of cyclic factors, held in canonical order.
class ElementaryModule {
   public:
    explicit ElementaryModule(const PrecisionProfile& prof, int free_rank = 0, std::vector<Factor> factors = {})
        : prof_(prof), free_rank_(free_rank), factors_(std::move(factors)) {
        prof_.validate();
        if (free_rank_ < 0) throw Error(ErrorKind::InvalidInput, "free rank must be >= 0");
        const Zmod64 R(prof_.p, prof_.M);
        for (auto& fac : factors_) {
            if (auto pp = std::get_if<PPower>(&fac)) {
                if (pp->f < 1) throw Error(ErrorKind::InvalidInput, "p-power exponent must be >= 1");
            } else if (auto cy = std::get_if<Cyclo>(&fac)) {
                if (cy->e < 1 || cy->a < 0) throw Error(ErrorKind::InvalidInput, "cyclo factor needs level >= 0, exp >= 1");
                prof_.require_level(cy->a + 1);
            } else {
                auto& gen = std::get<Generic>(fac);
                if (gen.e < 1) throw Error(ErrorKind::InvalidInput, "generic exponent must be >= 1");
                if (gen.g.prime() != prof_.p) throw Error(ErrorKind::InvalidInput, "generic factor built for another prime");
                if (gen.g.degree() < 1) throw Error(ErrorKind::InvalidInput, "generic factor needs degree >= 1");
                std::vector<BigInt> c(gen.g.coeffs().size());
                const BigInt m = BigInt(prof_.modulus());
                for (std::size_t i = 0; i < c.size(); ++i) {
                    c[i] = Zmod64::to_big(R.from_big(gen.g.coeffs()[i]));
                    if (2 * c[i] > m) c[i] -= m;  // symmetric representative
                }
                gen.g = DistPoly(IntPoly(std::move(c)), prof_.p);
                for (int a = 0; a <= prof_.N_max; ++a)
                    if (divides_nu(gen.g, a, prof_))
                        throw Error(ErrorKind::InvalidInput,
                                    "generic factor " + gen.g.poly().to_string() + " is divisible by nu_" + std::to_string(a));
            }
        }
        std::sort(factors_.begin(), factors_.end(), factor_less);
    }

    const PrecisionProfile& profile() const noexcept { return prof_; }
    int free_rank() const noexcept { return free_rank_; }
    const std::vector<Factor>& factors() const noexcept { return factors_; }

    bool has_cyclo() const {
        return std::any_of(factors_.begin(), factors_.end(), [](const Factor& f) { return std::holds_alternative<Cyclo>(f); });
    }

    /// Canonical-form equality.
    friend bool operator==(const ElementaryModule& a, const ElementaryModule& b) {
        return a.prof_.p == b.prof_.p && a.free_rank_ == b.free_rank_ && a.factors_ == b.factors_;
    }

    std::string to_string() const {
        std::vector<std::string> parts;
        if (free_rank_ == 1) parts.emplace_back("L");
        if (free_rank_ > 1) parts.emplace_back("L^" + std::to_string(free_rank_));
        for (const auto& fac : factors_) {
            if (auto pp = std::get_if<PPower>(&fac)) parts.push_back("L/p^" + std::to_string(pp->f));
            else if (auto cy = std::get_if<Cyclo>(&fac))
                parts.push_back("L/nu_" + std::to_string(cy->a) + (cy->e > 1 ? "^" + std::to_string(cy->e) : ""));
            else {
                const auto& g = std::get<Generic>(fac);
                parts.push_back("L/(" + g.g.poly().to_string() + ")" + (g.e > 1 ? "^" + std::to_string(g.e) : ""));
            }
        }
        if (parts.empty()) return "0";
        std::string s = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
        return s;
    }

   private:
    PrecisionProfile prof_;
    int free_rank_;
    std::vector<Factor> factors_;
};

inline ElementaryModule direct_sum(const ElementaryModule& a, const ElementaryModule& b) {
    std::vector<Factor> f = a.factors();
    f.insert(f.end(), b.factors().begin(), b.factors().end());
    return ElementaryModule(a.profile(), a.free_rank() + b.free_rank(), std::move(f));
}

struct InvariantReport {
    int rank = 0;
    int mu = 0;
    int lambda = 0;
    std::vector<Factor> char_factors;  // p^f, g^e, nu_a^e
};

inline InvariantReport invariants(const ElementaryModule& E) {
    InvariantReport r;
    r.rank = E.free_rank();
    for (const auto& fac : E.factors()) {
        if (auto pp = std::get_if<PPower>(&fac)) r.mu += pp->f;
        else if (auto cy = std::get_if<Cyclo>(&fac)) r.lambda += cy->e * static_cast<int>(nu_degree(cy->a, E.profile().p));
        else r.lambda += std::get<Generic>(fac).e * std::get<Generic>(fac).g.degree();
        r.char_factors.push_back(fac);
    }
    return r;
}

/// Elementary class of G(E) (up to pseudo-isomorphism): drop the free part, lower every
/// cyclotomic exponent by one.
inline ElementaryModule functor_G(const ElementaryModule& E) {
    std::vector<Factor> out;
    for (const auto& fac : E.factors()) {
        if (auto cy = std::get_if<Cyclo>(&fac)) {
            if (cy->e >= 2) out.push_back(Cyclo{cy->a, cy->e - 1});
        } else {
            out.push_back(fac);
        }
    }
    return ElementaryModule(E.profile(), 0, std::move(out));
}

inline Factor twist_factor(const Factor& fac, const PrecisionProfile& prof) {
    if (auto gen = std::get_if<Generic>(&fac)) return Generic{iota_dist(gen->g, prof), gen->e};
    return fac;  // iota fixes (p) and every (nu_a)
}

inline ElementaryModule twist(const ElementaryModule& E) {
    std::vector<Factor> out;
    for (const auto& fac : E.factors()) out.push_back(twist_factor(fac, E.profile()));
    return ElementaryModule(E.profile(), E.free_rank(), std::move(out));
}

/// Elementary class of F(E), up to finite error.
inline ElementaryModule functor_F(const ElementaryModule& E) {
    std::vector<Factor> out;
    for (const auto& fac : E.factors()) {
        if (auto cy = std::get_if<Cyclo>(&fac)) {
            if (cy->e >= 2) out.push_back(Cyclo{cy->a, cy->e - 1});
        } else {
            out.push_back(twist_factor(fac, E.profile()));
        }
    }
    return ElementaryModule(E.profile(), 0, std::move(out));
}

/// E(X) isomorphic to E(Y^iota)
inline bool check_funceq(const ElementaryModule& E1, const ElementaryModule& E2) { return E1 == twist(E2); }

struct QuotientProfile {
    int free_W_corank = 0;
    int torsion_exponent = 0;  // log_p |(E / omega_n E)[p^inf]|
    friend bool operator==(const QuotientProfile&, const QuotientProfile&) = default;
};

namespace detail {

/// v_p(Res(nu_a, omega_n / nu_a)) when a < n, v_p(Res(nu_a, omega_n)) otherwise. Memoized.
inline int cyclo_slice_valuation(std::uint64_t p, int a, int n) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint64_t, int, int>, int> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find({p, a, n}); it != cache.end()) return it->second;
    }
    const IntPoly nu = a == 0 ? IntPoly{0, 1} : omega_poly(p, a + 1).exact_div(omega_poly(p, a));
    IntPoly other = omega_poly(p, n);
    if (a < n) other = other.exact_div(nu);
    const auto v = other.degree() == 0 ? std::optional<int>(0) : resultant_valuation(DistPoly(nu, p), DistPoly(other, p));
    if (!v) throw Error(ErrorKind::InvalidInput, "cyclotomic factors unexpectedly share a root");
    std::lock_guard<std::mutex> lock(mu);
    cache[{p, a, n}] = *v;
    return *v;
}

}  // namespace detail

/// Closed-form W-structure of E / omega_n E.
inline QuotientProfile quotient_profile(const ElementaryModule& E, int n) {
    const auto& prof = E.profile();
    if (n > prof.N_max) throw Error(ErrorKind::LevelTooDeep, "level beyond N_max");
    prof.require_level(n);
    const int k = static_cast<int>(prof.omega_degree(n));
    QuotientProfile out;
    out.free_W_corank = E.free_rank() * k;
    const DistPoly omega = make_omega(n, prof);
    for (const auto& fac : E.factors()) {
        if (auto pp = std::get_if<PPower>(&fac)) {
            out.torsion_exponent += pp->f * k;
        } else if (auto cy = std::get_if<Cyclo>(&fac)) {
            // a < n: Lambda/(nu^e, omega_n) is an extension of the free Lambda/nu by the finite
            // Lambda/(nu^{e-1}, omega_n/nu); otherwise it is finite.
            const int v = detail::cyclo_slice_valuation(prof.p, cy->a, n);
            if (cy->a < n) {
                out.free_W_corank += static_cast<int>(nu_degree(cy->a, prof.p));
                out.torsion_exponent += (cy->e - 1) * v;
            } else {
                out.torsion_exponent += cy->e * v;
            }
        } else {
            const auto& gen = std::get<Generic>(fac);
            const auto v = resultant_valuation(gen.g, omega);
            if (!v) throw Error(ErrorKind::InvalidInput, "generic factor shares a root with omega_n");
            out.torsion_exponent += gen.e * *v;
        }
    }
    return out;
}

struct GrowthLaw {
    int mu = 0;
    int lambda = 0;
    bool valid = false;  // exact law e_n = mu*deg(omega_n) + lambda*n + nu for n >> 0
};

inline GrowthLaw growth_law(const ElementaryModule& E) {
    GrowthLaw g;
    for (const auto& fac : E.factors()) {
        if (auto pp = std::get_if<PPower>(&fac)) g.mu += pp->f;
        else if (auto gen = std::get_if<Generic>(&fac)) g.lambda += gen->e * gen->g.degree();
    }
    g.valid = !E.has_cyclo() && E.free_rank() == 0;
    return g;
}

}  // namespace iwa

#endif
