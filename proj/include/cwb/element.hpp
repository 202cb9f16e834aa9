#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cwb/ring.hpp"

namespace cwb {

// Permutation of {0..m-1}, img[i] = image of i. Products compose as functions:
// (f*g)(x) = f(g(x)), matching matrix convention.
struct Perm {
  std::vector<uint32_t> img;
  bool operator==(const Perm&) const = default;
};

// Square matrix over a ring, row-major, entries normalized.
struct Mat {
  Ring ring;
  uint32_t n = 0;
  std::vector<Int> a;
  bool operator==(const Mat&) const = default;
};

// Element of PSL(2,p): a 2x2 matrix mod p modulo global sign, stored with the
// canonical representative whose first nonzero entry (row-major) lies in [1, p/2].
struct ProjMat {
  uint64_t p = 0;
  std::array<uint64_t, 4> a{};
  bool operator==(const ProjMat&) const = default;
};

// Bijection of Z of the form j -> h(j) + shift with h of finite support;
// supp holds exactly the non-fixed points of h.
struct ShiftPerm {
  int64_t shift = 0;
  std::map<int64_t, int64_t> supp;
  bool operator==(const ShiftPerm&) const = default;
};

// Infinite matrix that is the shift-by-`shift` identity pattern outside a
// finite sheared window: block(i,j) = gamma_{i, shift+j} for i,j in [lo,hi],
// the delta pattern elsewhere. The window is kept minimal (no removable border).
struct ShiftMat {
  Ring ring;
  int64_t shift = 0;
  int64_t lo = 0;
  int64_t hi = -1;  // lo > hi encodes the empty window (a pure shift)
  std::vector<Int> block;  // (hi-lo+1)^2 entries, row-major

  int64_t width() const { return hi < lo ? 0 : hi - lo + 1; }
  // Entry of the sheared block at absolute indices (i, j), delta off-window.
  Int at(int64_t i, int64_t j) const;
  bool operator==(const ShiftMat&) const = default;
};

using Element = std::variant<Perm, Mat, ProjMat, ShiftPerm, ShiftMat>;

// Canonical byte-string key; equal elements <=> equal keys within one family.
// Fixed layouts (integers little-endian), so serializations are bit-stable:
//   'P' u32 m, then m u32 images
//   'M' ring(kind u8, k u64), u32 n, then n^2 entries as sign byte ('+'/'-'),
//       u32 hex-digit count, lowercase hex digits of |entry|
//   'J' u64 p, 4 u64 entries of the sign-canonical representative
//   'S' i64 shift, u32 support size, then (i64 point, i64 image) pairs in
//       increasing point order
//   'W' ring, i64 shift, i64 window lo, u32 window width, then width^2
//       entries encoded as in 'M' (the window is minimal by construction)
std::string element_key(const Element& e);

bool is_identity(const Element& e);

// Group products per variant. ShiftMat products honor `window_cap`, the maximal
// allowed half-width, and raise cap_exceeded beyond it.
Perm mul(const Perm& x, const Perm& y);
Mat mul(const Mat& x, const Mat& y);
ProjMat mul(const ProjMat& x, const ProjMat& y);
ShiftPerm mul(const ShiftPerm& x, const ShiftPerm& y);
ShiftMat mul(const ShiftMat& x, const ShiftMat& y, int64_t window_cap);

Element mul(const Element& x, const Element& y, int64_t window_cap = 64);

// Canonicalization helpers.
ProjMat proj_canonical(uint64_t p, std::array<uint64_t, 4> a);
ShiftMat shift_mat_trim(ShiftMat m);

}  // namespace cwb
