#include "cwb/element.hpp"

#include <algorithm>

namespace cwb {

namespace {

void put_u32(std::string& s, uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(char((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& s, uint64_t v) {
  for (int i = 0; i < 8; ++i) s.push_back(char((v >> (8 * i)) & 0xff));
}

void put_i64(std::string& s, int64_t v) { put_u64(s, uint64_t(v)); }

void put_int(std::string& s, const Int& v) {
  s.push_back(sgn(v) < 0 ? '-' : '+');
  Int a = abs(v);
  std::string digits = a.get_str(16);
  put_u32(s, uint32_t(digits.size()));
  s += digits;
}

void put_ring(std::string& s, const Ring& r) {
  s.push_back(char(r.kind));
  put_u64(s, r.k);
}

}  // namespace

Int ShiftMat::at(int64_t i, int64_t j) const {
  if (i >= lo && i <= hi && j >= lo && j <= hi) return block[size_t(i - lo) * width() + (j - lo)];
  return i == j ? ring.one() : ring.zero();
}

std::string element_key(const Element& e) {
  std::string s;
  if (const Perm* p = std::get_if<Perm>(&e)) {
    s.push_back('P');
    put_u32(s, uint32_t(p->img.size()));
    for (uint32_t v : p->img) put_u32(s, v);
  } else if (const Mat* m = std::get_if<Mat>(&e)) {
    s.push_back('M');
    put_ring(s, m->ring);
    put_u32(s, m->n);
    for (const Int& v : m->a) put_int(s, v);
  } else if (const ProjMat* j = std::get_if<ProjMat>(&e)) {
    s.push_back('J');
    put_u64(s, j->p);
    for (uint64_t v : j->a) put_u64(s, v);
  } else if (const ShiftPerm* sp = std::get_if<ShiftPerm>(&e)) {
    s.push_back('S');
    put_i64(s, sp->shift);
    put_u32(s, uint32_t(sp->supp.size()));
    for (auto& [k, v] : sp->supp) {
      put_i64(s, k);
      put_i64(s, v);
    }
  } else if (const ShiftMat* sm = std::get_if<ShiftMat>(&e)) {
    s.push_back('W');
    put_ring(s, sm->ring);
    put_i64(s, sm->shift);
    put_i64(s, sm->lo);
    put_u32(s, uint32_t(sm->width()));
    for (const Int& v : sm->block) put_int(s, v);
  }
  return s;
}

bool is_identity(const Element& e) {
  if (const Perm* p = std::get_if<Perm>(&e)) {
    for (uint32_t i = 0; i < p->img.size(); ++i)
      if (p->img[i] != i) return false;
    return true;
  }
  if (const Mat* m = std::get_if<Mat>(&e)) {
    for (uint32_t i = 0; i < m->n; ++i)
      for (uint32_t j = 0; j < m->n; ++j) {
        const Int& v = m->a[size_t(i) * m->n + j];
        if (i == j ? v != 1 : v != 0) return false;
      }
    return true;
  }
  if (const ProjMat* j = std::get_if<ProjMat>(&e)) {
    // canonical form of +-I is I (first nonzero entry normalized to 1)
    return j->a == std::array<uint64_t, 4>{1, 0, 0, 1};
  }
  if (const ShiftPerm* sp = std::get_if<ShiftPerm>(&e)) return sp->shift == 0 && sp->supp.empty();
  if (const ShiftMat* sm = std::get_if<ShiftMat>(&e)) return sm->shift == 0 && sm->width() == 0;
  return false;
}

Perm mul(const Perm& x, const Perm& y) {
  if (x.img.size() != y.img.size()) fail(errc::internal, "permutation size mismatch");
  Perm r;
  r.img.resize(x.img.size());
  for (size_t i = 0; i < y.img.size(); ++i) r.img[i] = x.img[y.img[i]];
  return r;
}

Mat mul(const Mat& x, const Mat& y) {
  if (x.n != y.n || !(x.ring == y.ring)) fail(errc::internal, "matrix shape/ring mismatch");
  Mat r{x.ring, x.n, std::vector<Int>(size_t(x.n) * x.n, x.ring.zero())};
  for (uint32_t i = 0; i < x.n; ++i)
    for (uint32_t l = 0; l < x.n; ++l) {
      const Int& v = x.a[size_t(i) * x.n + l];
      if (v == 0) continue;
      for (uint32_t j = 0; j < x.n; ++j) {
        Int& out = r.a[size_t(i) * x.n + j];
        out = x.ring.add(out, x.ring.mul(v, y.a[size_t(l) * x.n + j]));
      }
    }
  return r;
}

ProjMat proj_canonical(uint64_t p, std::array<uint64_t, 4> a) {
  for (auto& v : a) v %= p;
  for (int i = 0; i < 4; ++i) {
    if (a[i] == 0) continue;
    if (a[i] > p / 2)
      for (auto& v : a) v = (p - v) % p;
    break;
  }
  return ProjMat{p, a};
}

ProjMat mul(const ProjMat& x, const ProjMat& y) {
  if (x.p != y.p) fail(errc::internal, "psl2 modulus mismatch");
  uint64_t p = x.p;
  std::array<uint64_t, 4> r;
  r[0] = (x.a[0] * y.a[0] + x.a[1] * y.a[2]) % p;
  r[1] = (x.a[0] * y.a[1] + x.a[1] * y.a[3]) % p;
  r[2] = (x.a[2] * y.a[0] + x.a[3] * y.a[2]) % p;
  r[3] = (x.a[2] * y.a[1] + x.a[3] * y.a[3]) % p;
  return proj_canonical(p, r);
}

ShiftPerm mul(const ShiftPerm& x, const ShiftPerm& y) {
  // g(j) = h(j) + shift; (x*y)(j) = x(y(j)) gives h(j) = hx(hy(j) + py) - py.
  ShiftPerm r;
  r.shift = x.shift + y.shift;
  auto hx = [&](int64_t j) {
    auto it = x.supp.find(j);
    return it == x.supp.end() ? j : it->second;
  };
  auto hy = [&](int64_t j) {
    auto it = y.supp.find(j);
    return it == y.supp.end() ? j : it->second;
  };
  std::vector<int64_t> domain;
  for (auto& [k, v] : y.supp) domain.push_back(k);
  for (auto& [k, v] : x.supp) domain.push_back(k - y.shift);
  for (int64_t j : domain) {
    int64_t img = hx(hy(j) + y.shift) - y.shift;
    if (img != j) r.supp[j] = img;
  }
  return r;
}

ShiftMat shift_mat_trim(ShiftMat m) {
  auto border_removable = [&](int64_t e) {
    for (int64_t j = m.lo; j <= m.hi; ++j) {
      Int row = m.block[size_t(e - m.lo) * m.width() + (j - m.lo)];
      Int col = m.block[size_t(j - m.lo) * m.width() + (e - m.lo)];
      Int want_row = (j == e) ? m.ring.one() : m.ring.zero();
      if (m.ring.normalize(row) != want_row) return false;
      if (m.ring.normalize(col) != want_row) return false;
    }
    return true;
  };
  while (m.lo <= m.hi && border_removable(m.lo)) {
    int64_t w = m.width();
    std::vector<Int> nb;
    nb.reserve(size_t(w - 1) * (w - 1));
    for (int64_t i = 1; i < w; ++i)
      for (int64_t j = 1; j < w; ++j) nb.push_back(m.block[size_t(i) * w + j]);
    m.block = std::move(nb);
    ++m.lo;
  }
  while (m.lo <= m.hi && border_removable(m.hi)) {
    int64_t w = m.width();
    std::vector<Int> nb;
    nb.reserve(size_t(w - 1) * (w - 1));
    for (int64_t i = 0; i < w - 1; ++i)
      for (int64_t j = 0; j < w - 1; ++j) nb.push_back(m.block[size_t(i) * w + j]);
    m.block = std::move(nb);
    --m.hi;
  }
  if (m.lo > m.hi) {
    m.lo = 0;
    m.hi = -1;
    m.block.clear();
  }
  for (Int& v : m.block) v = m.ring.normalize(v);
  return m;
}

ShiftMat mul(const ShiftMat& x, const ShiftMat& y, int64_t window_cap) {
  if (!(x.ring == y.ring)) fail(errc::internal, "shift matrix ring mismatch");
  ShiftMat r;
  r.ring = x.ring;
  r.shift = x.shift + y.shift;
  if (x.width() == 0 && y.width() == 0) return r;

  // c(i,t) = sum_u b(i,u) * b'(u + px, t + px) over the sheared blocks,
  // which can differ from the delta pattern only on the union of x's window
  // and y's window translated by -x.shift.
  int64_t lo = 0, hi = -1;
  bool seeded = false;
  if (x.width() > 0) {
    lo = x.lo;
    hi = x.hi;
    seeded = true;
  }
  if (y.width() > 0) {
    int64_t ylo = y.lo - x.shift, yhi = y.hi - x.shift;
    lo = seeded ? std::min(lo, ylo) : ylo;
    hi = seeded ? std::max(hi, yhi) : yhi;
  }
  if (hi - lo + 1 > 2 * window_cap + 1)
    fail(errc::cap_exceeded, "shift-matrix window exceeds cap " + std::to_string(window_cap));
  int64_t w = hi - lo + 1;
  r.lo = lo;
  r.hi = hi;
  r.block.assign(size_t(w) * w, r.ring.zero());
  for (int64_t i = lo; i <= hi; ++i)
    for (int64_t t = lo; t <= hi; ++t) {
      Int s = r.ring.zero();
      for (int64_t u = lo; u <= hi; ++u)
        s = r.ring.add(s, r.ring.mul(x.at(i, u), y.at(u + x.shift, t + x.shift)));
      r.block[size_t(i - lo) * w + (t - lo)] = s;
    }
  return shift_mat_trim(std::move(r));
}

Element mul(const Element& x, const Element& y, int64_t window_cap) {
  if (x.index() != y.index()) fail(errc::internal, "element variant mismatch");
  if (const Perm* p = std::get_if<Perm>(&x)) return mul(*p, std::get<Perm>(y));
  if (const Mat* m = std::get_if<Mat>(&x)) return mul(*m, std::get<Mat>(y));
  if (const ProjMat* j = std::get_if<ProjMat>(&x)) return mul(*j, std::get<ProjMat>(y));
  if (const ShiftPerm* s = std::get_if<ShiftPerm>(&x)) return mul(*s, std::get<ShiftPerm>(y));
  return mul(std::get<ShiftMat>(x), std::get<ShiftMat>(y), window_cap);
}

}  // namespace cwb
