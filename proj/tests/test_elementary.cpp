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

#include <gtest/gtest.h>

#include "support.hpp"

using namespace iwa;
using namespace iwa::testing;

namespace {

DistPoly lin(std::int64_t c, std::uint64_t p) { return DistPoly(IntPoly{-c, 1}, p); }

// v_p(Res(nu_a, nu_b)) for a != b equals deg nu_min(a,b): evaluate nu_b at the
// conjugates of zeta_{p^a} - 1 and sum valuations.
int res_nu_nu(int a, int b, std::uint64_t p) { return static_cast<int>(nu_degree(std::min(a, b), p)); }

int cyclo_torsion_oracle(int a, int e, int n, std::uint64_t p) {
    int s = 0;
    for (int b = 0; b < n; ++b)
        if (b != a) s += res_nu_nu(a, b, p);
    return a < n ? (e - 1) * s : e * s;
}

// v_p of prod over roots c_i of omega_n(c_i) for a product of linear factors.
int linear_generic_oracle(const std::vector<std::int64_t>& roots, int n, std::uint64_t p) {
    int s = 0;
    for (auto c : roots) s += valuation(omega_poly(p, n).eval(BigInt(c)), p);
    return s;
}

}  // namespace

TEST(Invariants, Examples) {
    const auto prof = prof5();
    const auto a = invariants(ElementaryModule(prof, 1));
    EXPECT_EQ(a.rank, 1);
    EXPECT_EQ(a.mu, 0);
    EXPECT_EQ(a.lambda, 0);
    EXPECT_TRUE(a.char_factors.empty());
    const auto b = invariants(ElementaryModule(prof, 0, {PPower{2}, Generic{lin(5, 5), 1}}));
    EXPECT_EQ(b.rank, 0);
    EXPECT_EQ(b.mu, 2);
    EXPECT_EQ(b.lambda, 1);
    const auto c = invariants(ElementaryModule(prof, 0, {Cyclo{1, 3}}));
    EXPECT_EQ(c.mu, 0);
    EXPECT_EQ(c.lambda, 12);
}

TEST(ElementaryModule, CanonicalOrderAndValidation) {
    const auto prof = prof5();
    const ElementaryModule x(prof, 0, {Cyclo{1, 1}, Generic{lin(5, 5), 2}, PPower{3}, PPower{1}, Cyclo{0, 2}});
    ASSERT_EQ(x.factors().size(), 5u);
    EXPECT_EQ(std::get<PPower>(x.factors()[0]).f, 1);
    EXPECT_EQ(std::get<PPower>(x.factors()[1]).f, 3);
    EXPECT_TRUE(std::holds_alternative<Generic>(x.factors()[2]));
    EXPECT_EQ(std::get<Cyclo>(x.factors()[3]).a, 0);
    EXPECT_EQ(std::get<Cyclo>(x.factors()[4]).a, 1);
    const ElementaryModule y(prof, 0, {PPower{1}, Cyclo{0, 2}, Cyclo{1, 1}, PPower{3}, Generic{lin(5, 5), 2}});
    EXPECT_EQ(x, y);
    // coefficients are canonicalized into [0, p^M)
    const ElementaryModule z(prof, 0, {Generic{lin(-5, 5), 1}});
    EXPECT_EQ(std::get<Generic>(z.factors()[0]).g.poly().coeff(0), BigInt(5));
    EXPECT_EQ(ElementaryModule(prof, 0, {Generic{lin(5 - static_cast<std::int64_t>(prof.modulus()), 5), 1}}),
              ElementaryModule(prof, 0, {Generic{lin(5, 5), 1}}));
    auto expect_invalid = [&](std::vector<Factor> fs) {
        try {
            ElementaryModule(prof, 0, std::move(fs));
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
        }
    };
    expect_invalid({Generic{DistPoly(IntPoly{0, 1}, 5), 1}});          // T is nu_0
    expect_invalid({Generic{cyclo_nu(1, prof), 1}});                   // nu_1
    expect_invalid({Generic{DistPoly(IntPoly{0, 0, 1}, 5), 1}});       // T^2
    expect_invalid({PPower{0}});
    expect_invalid({Cyclo{1, 0}});
}

TEST(FunctorG, Examples) {
    const auto prof = prof5();
    EXPECT_EQ(functor_G(ElementaryModule(prof, 1)), ElementaryModule(prof));
    EXPECT_EQ(functor_G(ElementaryModule(prof, 0, {PPower{3}})), ElementaryModule(prof, 0, {PPower{3}}));
    EXPECT_EQ(functor_G(ElementaryModule(prof, 0, {Cyclo{0, 2}})), ElementaryModule(prof, 0, {Cyclo{0, 1}}));
    EXPECT_EQ(functor_G(ElementaryModule(prof, 0, {Cyclo{1, 1}})), ElementaryModule(prof));
}

TEST(FunctorF, Examples) {
    const auto prof = prof5();
    const Zmod64 R(5, prof.M);
    // T + p(1+p)^{-1}
    const BigInt root = Zmod64::to_big(R.mul(5, R.inv(6)));
    const DistPoly twisted(IntPoly(std::vector<BigInt>{root, 1}), 5);
    EXPECT_EQ(functor_F(ElementaryModule(prof, 0, {Generic{lin(5, 5), 2}})), ElementaryModule(prof, 0, {Generic{twisted, 2}}));
    for (int a = 0; a <= 2; ++a) EXPECT_EQ(functor_F(ElementaryModule(prof, 0, {Cyclo{a, 1}})), ElementaryModule(prof));
}

TEST(FunctorF, TwistOfFEqualsG) {
    const auto prof = prof5();
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 50; ++it) {
        const auto E = random_elementary(prof, rng);
        EXPECT_EQ(twist(functor_F(E)), functor_G(E)) << E.to_string();
        EXPECT_EQ(functor_F(E), twist(functor_G(E))) << E.to_string();
    }
}

TEST(Twist, Examples) {
    const auto prof = prof5();
    std::mt19937_64 rng(7);
    for (int it = 0; it < 30; ++it) {
        const auto E = random_elementary(prof, rng);
        EXPECT_EQ(twist(twist(E)), E) << E.to_string();
    }
    const ElementaryModule lt(prof, 0, {Cyclo{0, 1}});
    EXPECT_EQ(twist(lt), lt);
    const ElementaryModule lp(prof, 0, {Generic{lin(5, 5), 1}});
    EXPECT_NE(twist(lp), lp);
}

TEST(CheckFunceq, Examples) {
    const auto prof = prof5();
    const ElementaryModule a(prof, 1, {PPower{1}});
    EXPECT_TRUE(check_funceq(a, a));
    const ElementaryModule t(prof, 0, {Cyclo{0, 1}});
    EXPECT_TRUE(check_funceq(t, t));
    const ElementaryModule g(prof, 0, {Generic{lin(5, 5), 1}});
    EXPECT_FALSE(check_funceq(g, g));
    EXPECT_TRUE(check_funceq(g, twist(g)));
}

TEST(Properties, AdditivityAndCharIdeal) {
    const auto prof = prof5();
    std::mt19937_64 rng(99);
    for (int it = 0; it < 40; ++it) {
        const auto A = random_elementary(prof, rng);
        const auto B = random_elementary(prof, rng);
        const auto S = invariants(direct_sum(A, B));
        const auto ia = invariants(A), ib = invariants(B);
        EXPECT_EQ(S.rank, ia.rank + ib.rank);
        EXPECT_EQ(S.mu, ia.mu + ib.mu);
        EXPECT_EQ(S.lambda, ia.lambda + ib.lambda);
        auto u = ia.char_factors;
        u.insert(u.end(), ib.char_factors.begin(), ib.char_factors.end());
        std::sort(u.begin(), u.end(), factor_less);
        EXPECT_EQ(S.char_factors, u);
    }
}

TEST(Properties, GIdempotentOnCoprimeTorsion) {
    const auto prof = prof5();
    std::mt19937_64 rng(5);
    ModuleShape s;
    s.allow_cyclo = false;
    s.allow_free = false;
    for (int it = 0; it < 30; ++it) {
        const auto E = random_elementary(prof, rng, s);
        EXPECT_EQ(functor_G(E), E);
        EXPECT_EQ(functor_G(functor_G(E)), functor_G(E));
    }
}

TEST(QuotientProfile, Examples) {
    const auto prof = prof5();
    for (int n = 1; n <= 4; ++n) {
        EXPECT_EQ(quotient_profile(ElementaryModule(prof, 1), n), (QuotientProfile{static_cast<int>(prof.omega_degree(n)), 0}));
        EXPECT_EQ(quotient_profile(ElementaryModule(prof, 0, {Cyclo{0, 2}}), n), (QuotientProfile{1, n - 1}));
        EXPECT_EQ(quotient_profile(ElementaryModule(prof, 0, {Generic{lin(5, 5), 1}}), n), (QuotientProfile{0, n}));
    }
    EXPECT_EQ(quotient_profile(ElementaryModule(prof, 0, {PPower{1}}), 2), (QuotientProfile{0, 5}));
    try {
        quotient_profile(ElementaryModule(prof), 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::LevelTooDeep);
    }
}

TEST(QuotientProfile, CycloMatchesRootValuationOracle) {
    for (std::uint64_t p : {3u, 5u, 7u}) {
        const PrecisionProfile prof{p, 8, 512, 4};
        for (int a = 0; a <= 3; ++a)
            for (int e = 1; e <= 3; ++e)
                for (int n = 1; n <= 4; ++n) {
                    const auto q = quotient_profile(ElementaryModule(prof, 0, {Cyclo{a, e}}), n);
                    EXPECT_EQ(q.torsion_exponent, cyclo_torsion_oracle(a, e, n, p)) << p << " " << a << " " << e << " " << n;
                    EXPECT_EQ(q.free_W_corank, a < n ? static_cast<int>(nu_degree(a, p)) : 0);
                }
    }
}

TEST(QuotientProfile, GenericMatchesRootEvaluation) {
    const auto prof = prof5();
    std::mt19937_64 rng(3);
    for (int it = 0; it < 20; ++it) {
        std::vector<std::int64_t> roots;
        IntPoly g{1};
        const int d = static_cast<int>(uniform(rng, 1, 3));
        for (int i = 0; i < d; ++i) {
            const auto c = 5 * static_cast<std::int64_t>(uniform(rng, 1, 40));
            roots.push_back(c);
            g = g * IntPoly{-c, 1};
        }
        const int e = static_cast<int>(uniform(rng, 1, 3));
        const ElementaryModule E(prof, 0, {Generic{DistPoly(g, 5), e}});
        for (int n = 1; n <= 4; ++n)
            EXPECT_EQ(quotient_profile(E, n).torsion_exponent, e * linear_generic_oracle(roots, n, 5));
    }
}

TEST(GrowthLaw, Examples) {
    const auto prof = prof5();
    const auto a = growth_law(ElementaryModule(prof, 0, {PPower{1}}));
    EXPECT_EQ(a.mu, 1);
    EXPECT_EQ(a.lambda, 0);
    EXPECT_TRUE(a.valid);
    const auto b = growth_law(ElementaryModule(prof, 0, {Generic{lin(5, 5), 1}}));
    EXPECT_EQ(b.mu, 0);
    EXPECT_EQ(b.lambda, 1);
    EXPECT_TRUE(b.valid);
    EXPECT_FALSE(growth_law(ElementaryModule(prof, 1, {PPower{1}})).valid);
    for (int n = 1; n <= 4; ++n) {
        EXPECT_EQ(quotient_profile(ElementaryModule(prof, 0, {PPower{1}}), n).torsion_exponent, static_cast<int>(prof.omega_degree(n)));
    }
}

TEST(GrowthLaw, DifferencesMatchMuLambda) {
    const auto prof = prof5();
    std::mt19937_64 rng(17);
    ModuleShape s;
    s.allow_cyclo = false;
    s.allow_free = false;
    for (int it = 0; it < 25; ++it) {
        const auto E = random_elementary(prof, rng, s);
        const auto law = growth_law(E);
        ASSERT_TRUE(law.valid);
        // roots of degree <= 3 factors have valuation >= 1/3 > 1/(p-1): exact from n = 1
        for (int n = 1; n < prof.N_max; ++n) {
            const int d = quotient_profile(E, n + 1).torsion_exponent - quotient_profile(E, n).torsion_exponent;
            EXPECT_EQ(d, law.mu * static_cast<int>(prof.omega_degree(n + 1) - prof.omega_degree(n)) + law.lambda) << E.to_string();
        }
    }
}
