#include "cwb/ring.hpp"

namespace cwb {

namespace {

// Carry-less product of bit-vector polynomials over F2.
Int clmul(const Int& a, const Int& b) {
  Int r = 0;
  mp_bitcnt_t i = mpz_scan1(a.get_mpz_t(), 0);
  while (i != static_cast<mp_bitcnt_t>(-1)) {
    Int shifted = b << i;
    mpz_xor(r.get_mpz_t(), r.get_mpz_t(), shifted.get_mpz_t());
    i = mpz_scan1(a.get_mpz_t(), i + 1);
  }
  return r;
}

Int mask_bits(const Int& a, uint64_t k) {
  Int m = (Int(1) << k) - 1;
  return a & m;
}

}  // namespace

Int Ring::t() const {
  if (kind == Kind::poly2) return Int(2);
  if (kind == Kind::f2tk) {
    if (k < 2) return Int(0);  // t == 0 in F2[t]/(t)
    return Int(2);
  }
  fail(errc::unsupported, "t is only an element of the polynomial rings");
}

Int Ring::normalize(const Int& a) const {
  switch (kind) {
    case Kind::zmod: {
      Int r = a % Int(k);
      if (r < 0) r += Int(k);
      return r;
    }
    case Kind::f2tk: return mask_bits(a, k);
    case Kind::integers: return a;
    case Kind::poly2: return a;
  }
  fail(errc::internal, "bad ring kind");
}

Int Ring::add(const Int& a, const Int& b) const {
  if (characteristic_two()) {
    Int r;
    mpz_xor(r.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t());
    mpz_xor(r.get_mpz_t(), r.get_mpz_t(), b.get_mpz_t());
    return normalize(r);
  }
  return normalize(a + b);
}

Int Ring::sub(const Int& a, const Int& b) const {
  if (characteristic_two()) return add(a, b);
  return normalize(a - b);
}

Int Ring::neg(const Int& a) const {
  if (characteristic_two()) return normalize(a);
  return normalize(-a);
}

Int Ring::mul(const Int& a, const Int& b) const {
  if (characteristic_two()) return normalize(clmul(a, b));
  return normalize(a * b);
}

std::string Ring::text() const {
  switch (kind) {
    case Kind::zmod: return "zmod" + std::to_string(k);
    case Kind::f2tk: return "f2t:" + std::to_string(k);
    case Kind::integers: return "int";
    case Kind::poly2: return "poly2";
  }
  return "?";
}

std::string Ring::value_text(const Int& a) const {
  if (characteristic_two()) {
    // polynomial in t, lowest degree first
    if (a == 0) return "0";
    std::string s;
    for (mp_bitcnt_t i = mpz_scan1(a.get_mpz_t(), 0); i != static_cast<mp_bitcnt_t>(-1);
         i = mpz_scan1(a.get_mpz_t(), i + 1)) {
      if (!s.empty()) s += "+";
      if (i == 0)
        s += "1";
      else if (i == 1)
        s += "t";
      else
        s += "t^" + std::to_string(i);
    }
    return s;
  }
  return a.get_str();
}

Int determinant(const Ring& ring, const std::vector<Int>& a, int n) {
  if (n == 0) return ring.one();
  if (n == 1) return ring.normalize(a[0]);

  // Bird's division-free iteration: X_1 = A, X_{k+1} = mu(X_k) * A, where
  // mu(X) keeps the strictly upper triangular part of X, zeroes the rest, and
  // puts minus the partial traces sum_{j>i} X_jj on the diagonal. Then
  // (X_n)_{11} = (-1)^{n-1} det(A).
  auto mu = [&](std::vector<Int> x) {
    Int s = ring.zero();
    for (int i = n - 1; i >= 0; --i) {
      Int d = x[size_t(i) * n + i];
      x[size_t(i) * n + i] = ring.neg(s);
      s = ring.add(s, d);
      for (int j = 0; j < i; ++j) x[size_t(i) * n + j] = ring.zero();
    }
    return x;
  };
  std::vector<Int> x = a;
  for (int k = 1; k < n; ++k) {
    std::vector<Int> m = mu(std::move(x));
    std::vector<Int> next(size_t(n) * n, ring.zero());
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (ring.is_zero(m[size_t(i) * n + l])) continue;
        for (int j = 0; j < n; ++j)
          next[size_t(i) * n + j] =
              ring.add(next[size_t(i) * n + j], ring.mul(m[size_t(i) * n + l], a[size_t(l) * n + j]));
      }
    x = std::move(next);
  }
  Int det = x[0];
  if (n % 2 == 0) det = ring.neg(det);
  return ring.normalize(det);
}

}  // namespace cwb
