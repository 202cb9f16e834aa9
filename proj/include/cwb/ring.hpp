#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "cwb/error.hpp"

namespace cwb {

using Int = mpz_class;

// The coefficient rings of the matrix families:
//   zmod      Z/kZ, values normalized to [0, k)
//   f2tk      F2[t]/(t^k), a polynomial stored as a bit vector (bit i = coeff of t^i)
//   integers  Z, exact
//   poly2     F2[t], arbitrary degree, same bit-vector encoding
struct Ring {
  enum class Kind : uint8_t { zmod, f2tk, integers, poly2 };

  Kind kind = Kind::integers;
  uint64_t k = 0;  // modulus for zmod (>= 2), truncation degree for f2tk (>= 1)

  static Ring zmod(uint64_t k) {
    if (k < 2) fail(errc::unsupported, "zmod needs k >= 2");
    return Ring{Kind::zmod, k};
  }
  static Ring f2tk(uint64_t k) {
    if (k < 1) fail(errc::unsupported, "f2t needs k >= 1");
    return Ring{Kind::f2tk, k};
  }
  static Ring integers() { return Ring{Kind::integers, 0}; }
  static Ring poly2() { return Ring{Kind::poly2, 0}; }

  bool operator==(const Ring&) const = default;

  bool characteristic_two() const { return kind == Kind::f2tk || kind == Kind::poly2; }

  Int zero() const { return Int(0); }
  Int one() const { return Int(1); }
  // The ring element t (only for the polynomial rings).
  Int t() const;

  Int normalize(const Int& a) const;
  Int add(const Int& a, const Int& b) const;
  Int sub(const Int& a, const Int& b) const;
  Int neg(const Int& a) const;
  Int mul(const Int& a, const Int& b) const;
  bool is_zero(const Int& a) const { return normalize(a) == 0; }

  std::string text() const;
  std::string value_text(const Int& a) const;
};

// Division-free determinant (Berkowitz), valid over any commutative ring,
// including Z/kZ with composite k. Entries row-major, n x n.
Int determinant(const Ring& ring, const std::vector<Int>& a, int n);

}  // namespace cwb
