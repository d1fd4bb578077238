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

#ifndef IWA_SERIES_HPP
#define IWA_SERIES_HPP

#include <cstdint>
#include <vector>

#include "intpoly.hpp"

namespace iwa {

/// Element of Lambda at precision (p^M, T^D): D coefficients in [0, p^M).
class RingElem {
   public:
    explicit RingElem(const PrecisionProfile& prof) : prof_(prof), c_(static_cast<std::size_t>(prof.D), 0) {}

    RingElem(const PrecisionProfile& prof, const std::vector<std::int64_t>& coeffs) : RingElem(prof) {
        const Zmod64 R = ring();
        for (std::size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = R.from_i64(coeffs[i]);
    }

    /// Reduction of an exact polynomial; degree must be < D.
    static RingElem from_poly(const PrecisionProfile& prof, const IntPoly& f) {
        if (f.degree() >= prof.D) throw Error(ErrorKind::InsufficientTPrecision, "polynomial degree >= D");
        RingElem r(prof);
        const Zmod64 R = r.ring();
        for (int i = 0; i <= f.degree(); ++i) r.c_[static_cast<std::size_t>(i)] = R.from_big(f.coeff(static_cast<std::size_t>(i)));
        return r;
    }
    static RingElem from_dist(const PrecisionProfile& prof, const DistPoly& f) { return from_poly(prof, f.poly()); }
    static RingElem constant(const PrecisionProfile& prof, std::int64_t v) { return RingElem(prof, {v}); }
    static RingElem variable(const PrecisionProfile& prof) { return RingElem(prof, {0, 1}); }

    const PrecisionProfile& profile() const noexcept { return prof_; }
    Zmod64 ring() const { return Zmod64(prof_.p, prof_.M); }
    std::size_t size() const noexcept { return c_.size(); }
    std::uint64_t operator[](std::size_t i) const { return c_[i]; }
    std::uint64_t& operator[](std::size_t i) { return c_[i]; }
    const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }

    bool is_zero() const noexcept {
        for (auto x : c_)
            if (x) return false;
        return true;
    }

    /// Minimal p-valuation over coefficients (M when zero).
    int min_valuation() const {
        const Zmod64 R = ring();
        int v = prof_.M;
        for (auto x : c_) v = std::min(v, R.val(x));
        return v;
    }

    /// Exact polynomial with canonical coefficients in [0, p^M).
    IntPoly lift() const {
        std::vector<BigInt> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
        return IntPoly(std::move(c));
    }

    friend RingElem operator+(const RingElem& a, const RingElem& b) {
        RingElem r(a.prof_);
        const Zmod64 R = a.ring();
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = R.add(a.c_[i], b.c_[i]);
        return r;
    }
    friend RingElem operator-(const RingElem& a, const RingElem& b) {
        RingElem r(a.prof_);
        const Zmod64 R = a.ring();
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = R.sub(a.c_[i], b.c_[i]);
        return r;
    }
    friend RingElem operator-(const RingElem& a) { return RingElem(a.prof_) - a; }
    friend RingElem operator*(const RingElem& a, const RingElem& b) {
        RingElem r(a.prof_);
        const Zmod64 R = a.ring();
        const std::size_t D = r.c_.size();
        for (std::size_t i = 0; i < D; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; i + j < D; ++j)
                if (b.c_[j]) r.c_[i + j] = R.mul_add(r.c_[i + j], a.c_[i], b.c_[j]);
        }
        return r;
    }
    friend RingElem operator*(std::uint64_t s, const RingElem& a) {
        RingElem r(a.prof_);
        const Zmod64 R = a.ring();
        s %= R.modulus();
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = R.mul(s, a.c_[i]);
        return r;
    }
    friend bool operator==(const RingElem& a, const RingElem& b) { return a.prof_ == b.prof_ && a.c_ == b.c_; }

    /// Multiplicative inverse; requires a unit constant term.
    RingElem inverse() const {
        const Zmod64 R = ring();
        if (!R.is_unit(c_[0])) throw Error(ErrorKind::NonInvertible, "constant term is not a unit");
        const std::uint64_t u = R.inv(c_[0]);
        RingElem r(prof_);
        r.c_[0] = u;
        for (std::size_t k = 1; k < c_.size(); ++k) {
            std::uint64_t s = 0;
            for (std::size_t i = 1; i <= k; ++i)
                if (c_[i]) s = R.mul_add(s, c_[i], r.c_[k - i]);
            r.c_[k] = R.mul(R.neg(s), u);
        }
        return r;
    }

    /// Highest nonzero index, -1 for zero.
    int degree() const noexcept {
        for (std::size_t i = c_.size(); i-- > 0;)
            if (c_[i]) return static_cast<int>(i);
        return -1;
    }

   private:
    PrecisionProfile prof_;
    std::vector<std::uint64_t> c_;
};

}  // namespace iwa

#endif
