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

#include <random>

#include "iwa/weierstrass.hpp"

using namespace iwa;

namespace {

PrecisionProfile prof5() { return PrecisionProfile{5, 16, 128, 4}; }

RingElem random_series(const PrecisionProfile& prof, std::mt19937_64& rng) {
    RingElem f(prof);
    const std::uint64_t m = prof.modulus();
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = rng() % m;
    return f;
}

DistPoly random_dist(const PrecisionProfile& prof, std::mt19937_64& rng, int max_deg) {
    const int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg));
    std::vector<BigInt> c(static_cast<std::size_t>(d + 1));
    const std::uint64_t bound = prof.modulus() / prof.p;
    for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = BigInt(prof.p) * BigInt(rng() % bound);
    c[static_cast<std::size_t>(d)] = 1;
    return DistPoly(IntPoly(std::move(c)), prof.p);
}

// Oracle: binomial coefficients by repeated multiplication with (1+T).
IntPoly one_plus_t_pow(std::uint64_t e) {
    IntPoly r{1};
    for (std::uint64_t i = 0; i < e; ++i) r = r * IntPoly{1, 1};
    return r;
}

}  // namespace

TEST(Omega, LowLevels) {
    const auto prof = prof5();
    EXPECT_EQ(make_omega(1, prof).poly(), (IntPoly{0, 1}));
    EXPECT_EQ(make_omega(2, prof).poly(), (IntPoly{0, 5, 10, 10, 5, 1}));
    const DistPoly w3 = make_omega(3, prof);
    EXPECT_EQ(w3.degree(), 25);
    EXPECT_EQ(w3.poly(), one_plus_t_pow(25) - IntPoly{1});
    EXPECT_TRUE(w3.poly().divmod_monic(make_omega(2, prof).poly()).second.is_zero());
}

TEST(Omega, LevelTooDeep) {
    const PrecisionProfile prof{5, 16, 128, 4};
    EXPECT_NO_THROW(make_omega(4, prof));
    try {
        make_omega(5, prof);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::LevelTooDeep);
    }
}

TEST(CycloNu, Examples) {
    const auto prof = prof5();
    EXPECT_EQ(cyclo_nu(0, prof).poly(), (IntPoly{0, 1}));
    EXPECT_EQ(cyclo_nu(1, prof).poly(), (IntPoly{5, 10, 10, 5, 1}));
    for (int a = 1; a <= 3; ++a) {
        EXPECT_EQ(cyclo_nu(a, prof).poly().coeff(0), 5);
        EXPECT_EQ(cyclo_nu(a, prof).degree(), static_cast<int>(prof.omega_degree(a + 1) - prof.omega_degree(a)));
    }
}

TEST(TowerDivisibility, OmegaAndNu) {
    const auto prof = prof5();
    for (int n = 1; n <= 3; ++n) {
        EXPECT_TRUE(make_omega(n + 1, prof).poly().divmod_monic(make_omega(n, prof).poly()).second.is_zero());
        for (int a = 0; a <= 3; ++a) {
            const bool divides = make_omega(n, prof).poly().divmod_monic(cyclo_nu(a, prof).poly()).second.is_zero();
            EXPECT_EQ(divides, a <= n - 1) << "n=" << n << " a=" << a;
        }
    }
}

TEST(WeierstrassDivide, Examples) {
    const auto prof = prof5();
    const DistPoly t = cyclo_nu(0, prof);
    auto r1 = weierstrass_divide(RingElem::from_dist(prof, make_omega(2, prof)), t, prof);
    EXPECT_EQ(r1.quotient, RingElem::from_dist(prof, cyclo_nu(1, prof)));
    EXPECT_TRUE(r1.remainder.is_zero());
    auto r2 = weierstrass_divide(RingElem::variable(prof), t, prof);
    EXPECT_EQ(r2.quotient, RingElem::constant(prof, 1));
    EXPECT_TRUE(r2.remainder.is_zero());
    auto r3 = weierstrass_divide(RingElem::constant(prof, 5), t, prof);
    EXPECT_TRUE(r3.quotient.is_zero());
    EXPECT_EQ(r3.remainder, RingElem::constant(prof, 5));
}

TEST(WeierstrassDivide, IdentityOnRandomInputs) {
    const auto prof = prof5();
    std::mt19937_64 rng(11);
    for (int it = 0; it < 40; ++it) {
        const RingElem f = random_series(prof, rng);
        const DistPoly P = random_dist(prof, rng, 8);
        const auto [q, r, digits] = weierstrass_divide(f, P, prof);
        EXPECT_TRUE((f - q * RingElem::from_dist(prof, P) - r).is_zero());
        EXPECT_LT(r.degree(), P.degree());
    }
}

TEST(WeierstrassPrepare, Examples) {
    const auto prof = prof5();
    auto a = weierstrass_prepare(RingElem(prof, {0, 1, 1}), prof);
    EXPECT_EQ(a.mu, 0);
    EXPECT_EQ(a.unit, RingElem(prof, {1, 1}));
    EXPECT_EQ(a.dist.poly(), (IntPoly{0, 1}));
    auto b = weierstrass_prepare(RingElem(prof, {0, 5}), prof);
    EXPECT_EQ(b.mu, 1);
    EXPECT_EQ(b.unit, RingElem::constant(prof, 1));
    EXPECT_EQ(b.dist.poly(), (IntPoly{0, 1}));
    auto c = weierstrass_prepare(RingElem(prof, {5, 1}), prof);
    EXPECT_EQ(c.mu, 0);
    EXPECT_EQ(c.unit, RingElem::constant(prof, 1));
    EXPECT_EQ(c.dist.poly(), (IntPoly{5, 1}));
}

TEST(WeierstrassPrepare, Errors) {
    const auto prof = prof5();
    try {
        weierstrass_prepare(RingElem(prof), prof);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InsufficientPPrecision);
    }
}

TEST(WeierstrassPrepare, IdentityOnRandomInputs) {
    const auto prof = prof5();
    std::mt19937_64 rng(12);
    for (int it = 0; it < 40; ++it) {
        RingElem f = random_series(prof, rng);
        // force a valuation and a distinguished degree
        const int mu = static_cast<int>(rng() % 3);
        const std::size_t d = rng() % 6;
        for (std::size_t i = 0; i < d; ++i) f[i] = (f[i] / 5) * 5 % prof.modulus();
        if (f[d] % 5 == 0) f[d] += 1;
        f = static_cast<std::uint64_t>(ipow_sat(5, mu)) * f;
        const auto res = weierstrass_prepare(f, prof);
        EXPECT_EQ(res.mu, mu);
        EXPECT_EQ(res.dist.degree(), static_cast<int>(d));
        EXPECT_NE(res.unit[0] % 5, 0u);
        const RingElem rebuilt = static_cast<std::uint64_t>(ipow_sat(5, mu)) * (res.unit * RingElem::from_dist(prof, res.dist));
        EXPECT_EQ(rebuilt, f);
    }
}

TEST(RingLaws, RandomTriples) {
    const auto prof = prof5();
    std::mt19937_64 rng(13);
    for (int it = 0; it < 20; ++it) {
        const RingElem a = random_series(prof, rng), b = random_series(prof, rng), c = random_series(prof, rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
    }
}

TEST(Iota, SeriesExamples) {
    const auto prof = prof5();
    const RingElem t = RingElem::variable(prof);
    const RingElem it = iota_series(t, prof);
    // geometric series oracle: -T/(1+T)
    const RingElem expected = -(t * RingElem(prof, {1, 1}).inverse());
    EXPECT_EQ(it, expected);
    for (std::size_t k = 1; k < 6; ++k) EXPECT_EQ(it[k], k % 2 ? prof.modulus() - 1 : 1u);
    EXPECT_EQ(iota_series(it, prof), t);
}

TEST(Iota, FixesOmegaIdeals) {
    const auto prof = prof5();
    for (int n = 1; n <= 4; ++n) {
        const DistPoly w = make_omega(n, prof);
        const auto res = weierstrass_divide(iota_series(RingElem::from_dist(prof, w), prof), w, prof);
        EXPECT_EQ(res.certain_digits, std::min(16, 128 / w.degree()));
        EXPECT_TRUE(res.remainder_vanishes_to_certain_digits()) << n;
    }
    // With D >= M * deg nu_a every remainder digit is certain.
    const PrecisionProfile wide{5, 16, 1600, 4};
    for (int a = 0; a <= 3; ++a) {
        const DistPoly nu = cyclo_nu(a, wide);
        const auto res = weierstrass_divide(iota_series(RingElem::from_dist(wide, nu), wide), nu, wide);
        EXPECT_EQ(res.certain_digits, 16);
        EXPECT_TRUE(res.remainder.is_zero()) << a;
    }
}

TEST(WeierstrassDivide, TruncationOnlyAffectsUncertainDigits) {
    // f = (1+T)^{-1} * omega_3 is divisible by omega_3, but at D = 128 only floor(128/25) digits
    // of the remainder are determined by the retained coefficients.
    const auto prof = prof5();
    const DistPoly w = make_omega(3, prof);
    const RingElem f = RingElem(prof, {1, 1}).inverse() * RingElem::from_dist(prof, w);
    const auto res = weierstrass_divide(f, w, prof);
    EXPECT_EQ(res.certain_digits, 5);
    EXPECT_TRUE(res.remainder_vanishes_to_certain_digits());
}

TEST(Iota, HomomorphismAndInvolution) {
    const auto prof = prof5();
    std::mt19937_64 rng(14);
    for (int it = 0; it < 20; ++it) {
        const RingElem a = random_series(prof, rng), b = random_series(prof, rng);
        EXPECT_EQ(iota_series(a * b, prof), iota_series(a, prof) * iota_series(b, prof));
        EXPECT_EQ(iota_series(iota_series(a, prof), prof), a);
    }
}

TEST(IotaDist, Examples) {
    const auto prof = prof5();
    EXPECT_EQ(iota_dist(cyclo_nu(0, prof), prof).poly(), (IntPoly{0, 1}));
    for (int a = 0; a <= 2; ++a) EXPECT_TRUE(same_residues(iota_dist(cyclo_nu(a, prof), prof), cyclo_nu(a, prof), prof));
    // root of iota(T) - p is -p/(1+p)
    const Zmod64 R(5, 16);
    const std::uint64_t c0 = R.mul(5, R.inv(6));
    const DistPoly got = iota_dist(DistPoly(IntPoly{-5, 1}, 5), prof);
    EXPECT_EQ(got.poly(), IntPoly(std::vector<BigInt>{BigInt(c0), BigInt(1)}));
}

TEST(IotaDist, InvolutionOnRandom) {
    const auto prof = prof5();
    std::mt19937_64 rng(15);
    for (int it = 0; it < 50; ++it) {
        const DistPoly P = random_dist(prof, rng, 8);
        EXPECT_EQ(iota_dist(iota_dist(P, prof), prof), P);
    }
}

TEST(Resultant, Examples) {
    const auto prof = prof5();
    const DistPoly t = cyclo_nu(0, prof);
    const DistPoly tp(IntPoly{-5, 1}, 5);
    EXPECT_EQ(resultant_valuation(t, tp), 1);
    for (int n = 1; n <= 3; ++n) {
        // oracle: Res(T - p, omega_n) = +-omega_n(p)
        const int oracle = valuation(make_omega(n, prof).poly().eval(5), 5);
        EXPECT_EQ(oracle, n);
        EXPECT_EQ(resultant_valuation(tp, make_omega(n, prof)), n);
    }
    EXPECT_EQ(resultant_valuation(t, make_omega(2, prof)), std::nullopt);
}

TEST(Resultant, SylvesterMatchesRootProduct) {
    // Res(g, h) for g = (T - a)(T - b) equals h(a) h(b) for monic h.
    const IntPoly g = IntPoly{-5, 1} * IntPoly{-25, 1};
    const IntPoly h = IntPoly{10, 3, 1};
    EXPECT_EQ(abs(sylvester_determinant(g, h)), abs(h.eval(5) * h.eval(25)));
}

TEST(ClassifyCyclo, Examples) {
    const auto prof = prof5();
    EXPECT_EQ(classify_cyclo(cyclo_nu(0, prof), prof), 0);
    EXPECT_EQ(classify_cyclo(cyclo_nu(2, prof), prof), 2);
    const DistPoly tp(IntPoly{-5, 1}, 5);
    EXPECT_EQ(classify_cyclo(tp, prof), std::nullopt);
    for (int a = 0; a <= prof.N_max; ++a) EXPECT_FALSE(divides_nu(tp, a, prof));
    EXPECT_TRUE(divides_nu(DistPoly(cyclo_nu(1, prof).poly() * IntPoly{5, 1}, 5), 1, prof));
}

template <class Word>
void check_mul_against_bigint(std::uint64_t p, int K, std::uint64_t seed) {
    const Zmod<Word> R(p, K);
    const BigInt m = Zmod<Word>::to_big(R.modulus());
    std::mt19937_64 rng(seed);
    for (int it = 0; it < 5000; ++it) {
        const BigInt a0 = (BigInt(rng()) << 64 | BigInt(rng())) % m;
        const BigInt b0 = it % 7 == 0 ? m - 1 : (BigInt(rng()) << 64 | BigInt(rng())) % m;
        const Word a = R.from_big(a0), b = R.from_big(b0);
        ASSERT_EQ(Zmod<Word>::to_big(R.mul(a, b)), a0 * b0 % m) << p << "^" << K;
    }
}

TEST(Residue, MultiplicationMatchesBigInt) {
    for (std::uint64_t p : {3u, 5u, 7u}) {
        for (int K : {1, 8, 16, 22}) {
            if (ipow_sat(p, K) < (u128(1) << 62)) check_mul_against_bigint<std::uint64_t>(p, K, p * 100 + K);
        }
        for (int K : {1, 16, 24, 28, 32, 40, 48, 60}) {
            if (ipow_sat(p, K) < (u128(1) << 96)) check_mul_against_bigint<u128>(p, K, p * 1000 + K);
        }
    }
    const Zmod128 R(5, 32);
    EXPECT_EQ(R.mul(R.inv(7), 7), 1u);
}
