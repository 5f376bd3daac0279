// Copyright 2026 The vqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact arithmetic in the prime field GF(d), d an odd prime below 2^64.

#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "vqss/error.hpp"

namespace vqss {

namespace detail {

constexpr std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b,
                                std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

constexpr std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e,
                                std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin. The first twelve primes as witnesses are
/// sufficient for every n < 3.3e24, which covers all 64-bit inputs.
constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::uint64_t kWitnesses[] = {2,  3,  5,  7,  11, 13,
                                          17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t odd = n - 1;
  int twos = 0;
  while ((odd & 1) == 0) {
    odd >>= 1;
    ++twos;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = detail::pow_mod(a, odd, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < twos; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// The qudit dimension d. Always an odd prime.
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t d) : d_(d) {
    if (d < 3 || d % 2 == 0 || !is_prime(d)) {
      throw ValidationError("modulus must be an odd prime, got " +
                            std::to_string(d));
    }
  }

  std::uint64_t value() const { return d_; }

  friend bool operator==(PrimeModulus, PrimeModulus) = default;

 private:
  std::uint64_t d_;
};

/// A residue in [0, d). Immutable.
class FieldElement {
 public:
  /// Rejects values outside [0, d); use reduce() to wrap arbitrary integers.
  FieldElement(PrimeModulus d, std::uint64_t value) : d_(d), v_(value) {
    if (value >= d.value()) {
      throw ValidationError("residue " + std::to_string(value) +
                            " out of range for d=" + std::to_string(d.value()));
    }
  }

  static FieldElement reduce(PrimeModulus d, std::uint64_t value) {
    return FieldElement(d, value % d.value());
  }

  static FieldElement reduce_signed(PrimeModulus d, std::int64_t value) {
    if (value >= 0) return reduce(d, static_cast<std::uint64_t>(value));
    std::uint64_t magnitude =
        (static_cast<std::uint64_t>(-(value + 1)) + 1) % d.value();
    return FieldElement(d, magnitude == 0 ? 0 : d.value() - magnitude);
  }

  static FieldElement zero(PrimeModulus d) { return FieldElement(d, 0); }
  static FieldElement one(PrimeModulus d) { return FieldElement(d, 1); }

  std::uint64_t value() const { return v_; }
  PrimeModulus modulus() const { return d_; }
  bool is_zero() const { return v_ == 0; }

  FieldElement operator+(FieldElement o) const {
    check(o);
    std::uint64_t d = d_.value();
    // v_ + o.v_ may overflow for d near 2^64; compare against d - o.v_.
    std::uint64_t r = v_ >= d - o.v_ ? v_ - (d - o.v_) : v_ + o.v_;
    return FieldElement(d_, r, Unchecked{});
  }

  FieldElement operator-(FieldElement o) const {
    check(o);
    std::uint64_t r = v_ >= o.v_ ? v_ - o.v_ : d_.value() - (o.v_ - v_);
    return FieldElement(d_, r, Unchecked{});
  }

  FieldElement operator-() const {
    return FieldElement(d_, v_ == 0 ? 0 : d_.value() - v_, Unchecked{});
  }

  FieldElement operator*(FieldElement o) const {
    check(o);
    return FieldElement(d_, detail::mul_mod(v_, o.v_, d_.value()), Unchecked{});
  }

  FieldElement operator/(FieldElement o) const { return *this * o.inverse(); }

  FieldElement& operator+=(FieldElement o) { return *this = *this + o; }
  FieldElement& operator-=(FieldElement o) { return *this = *this - o; }
  FieldElement& operator*=(FieldElement o) { return *this = *this * o; }

  /// Extended Euclid. Throws ArithmeticError on zero.
  FieldElement inverse() const {
    if (v_ == 0) throw ArithmeticError("zero has no multiplicative inverse");
    // Coefficients tracked mod d to stay within unsigned range.
    std::uint64_t d = d_.value();
    std::uint64_t r0 = d, r1 = v_;
    FieldElement t0 = zero(d_), t1 = one(d_);
    while (r1 != 0) {
      std::uint64_t q = r0 / r1;
      std::uint64_t r2 = r0 - q * r1;
      FieldElement t2 = t0 - reduce(d_, q) * t1;
      r0 = r1;
      r1 = r2;
      t0 = t1;
      t1 = t2;
    }
    return t0;
  }

  /// pow(0, 0) is 1.
  FieldElement pow(std::uint64_t e) const {
    return FieldElement(d_, detail::pow_mod(v_, e, d_.value()), Unchecked{});
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.d_ == b.d_ && a.v_ == b.v_;
  }

  friend std::strong_ordering operator<=>(const FieldElement& a,
                                          const FieldElement& b) {
    if (auto c = a.d_.value() <=> b.d_.value(); c != 0) return c;
    return a.v_ <=> b.v_;
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
    return os << e.v_;
  }

 private:
  struct Unchecked {};
  FieldElement(PrimeModulus d, std::uint64_t v, Unchecked) : d_(d), v_(v) {}

  void check(const FieldElement& o) const {
    if (!(d_ == o.d_)) {
      throw ArithmeticError("modulus mismatch: " + std::to_string(d_.value()) +
                            " vs " + std::to_string(o.d_.value()));
    }
  }

  PrimeModulus d_;
  std::uint64_t v_;
};

inline FieldElement add(FieldElement a, FieldElement b) { return a + b; }
inline FieldElement sub(FieldElement a, FieldElement b) { return a - b; }
inline FieldElement mul(FieldElement a, FieldElement b) { return a * b; }
inline FieldElement neg(FieldElement a) { return -a; }
inline FieldElement inv(FieldElement a) { return a.inverse(); }
inline FieldElement pow(FieldElement a, std::uint64_t e) { return a.pow(e); }

}  // namespace vqss
