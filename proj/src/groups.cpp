#include "cwb/groups.hpp"

#include <algorithm>
#include <charconv>

namespace cwb {

namespace {

int64_t parse_int(const std::string& s, const std::string& what) {
  int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(errc::parse, "bad integer for " + what + ": '" + s + "'");
  return v;
}

bool is_odd_prime(int64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

Ring parse_ring(const std::string& s) {
  if (s.rfind("zmod", 0) == 0) return Ring::zmod(uint64_t(parse_int(s.substr(4), "zmod modulus")));
  if (s.rfind("f2t:", 0) == 0) return Ring::f2tk(uint64_t(parse_int(s.substr(4), "f2t degree")));
  if (s == "int") return Ring::integers();
  fail(errc::parse, "unknown ring '" + s + "'");
}

std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& s) {
  std::vector<std::pair<std::string, std::string>> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    std::string part = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
    size_t eq = part.find('=');
    if (eq == std::string::npos) fail(errc::parse, "expected key=value in '" + part + "'");
    out.emplace_back(part.substr(0, eq), part.substr(eq + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string get_kv(const std::vector<std::pair<std::string, std::string>>& kv,
                   const std::string& key) {
  std::string found;
  int hits = 0;
  for (auto& [k, v] : kv)
    if (k == key) {
      found = v;
      ++hits;
    }
  if (hits != 1) fail(errc::parse, "parameter '" + key + "' must appear exactly once");
  return found;
}

// n x n elementary matrices and friends over `ring`.
Mat mat_identity(const Ring& ring, uint32_t n) {
  Mat m{ring, n, std::vector<Int>(size_t(n) * n, ring.zero())};
  for (uint32_t i = 0; i < n; ++i) m.a[size_t(i) * n + i] = ring.one();
  return m;
}

Mat mat_elementary(const Ring& ring, uint32_t n, uint32_t i, uint32_t j, const Int& v) {
  Mat m = mat_identity(ring, n);
  m.a[size_t(i) * n + j] = ring.normalize(v);
  return m;
}

Mat mat_cycle(const Ring& ring, uint32_t n) {
  Mat m{ring, n, std::vector<Int>(size_t(n) * n, ring.zero())};
  for (uint32_t j = 0; j < n; ++j) m.a[size_t((j + 1) % n) * n + j] = ring.one();
  return m;
}

Perm perm_shift(int64_t n, int64_t by) {
  Perm p;
  p.img.resize(size_t(n));
  int64_t r = ((by % n) + n) % n;
  for (int64_t j = 0; j < n; ++j) p.img[size_t(j)] = uint32_t((j + r) % n);
  return p;
}

ShiftMat shift_mat_pure(const Ring& ring, int64_t shift) {
  ShiftMat m;
  m.ring = ring;
  m.shift = shift;
  return m;
}

ShiftMat shift_mat_window2(const Ring& ring, const Int& a01, const Int& a10) {
  ShiftMat m;
  m.ring = ring;
  m.shift = 0;
  m.lo = 0;
  m.hi = 1;
  m.block = {ring.one(), ring.normalize(a01), ring.normalize(a10), ring.one()};
  return shift_mat_trim(std::move(m));
}

uint64_t checked_mul(std::optional<uint64_t>& acc, uint64_t f) {
  if (!acc) return 0;
  if (f != 0 && *acc > UINT64_MAX / f) {
    acc.reset();
    return 0;
  }
  *acc *= f;
  return *acc;
}

std::optional<uint64_t> checked_pow(uint64_t base, uint64_t exp) {
  std::optional<uint64_t> r = 1;
  for (uint64_t i = 0; i < exp && r; ++i) checked_mul(r, base);
  return r;
}

// |SL(n, F_q)| = q^{n(n-1)/2} * prod_{i=2..n} (q^i - 1)
std::optional<uint64_t> sl_order_field(int64_t n, uint64_t q) {
  std::optional<uint64_t> r = checked_pow(q, uint64_t(n) * (n - 1) / 2);
  for (int64_t i = 2; i <= n && r; ++i) {
    auto qi = checked_pow(q, uint64_t(i));
    if (!qi) return std::nullopt;
    checked_mul(r, *qi - 1);
  }
  return r;
}

}  // namespace

std::optional<uint64_t> sl_order(int64_t n, const Ring& ring) {
  if (ring.kind == Ring::Kind::f2tk) {
    // SL(n, F2[t]/(t^k)) -> SL(n, F2) is onto with kernel of size 2^{(k-1)(n^2-1)}
    auto base = sl_order_field(n, 2);
    if (!base) return std::nullopt;
    auto kernel = checked_pow(2, (ring.k - 1) * (uint64_t(n) * n - 1));
    if (!kernel) return std::nullopt;
    std::optional<uint64_t> r = *base;
    checked_mul(r, *kernel);
    return r;
  }
  if (ring.kind != Ring::Kind::zmod) return std::nullopt;
  // multiplicative over the prime-power factorization of k
  uint64_t k = ring.k;
  std::optional<uint64_t> total = 1;
  for (uint64_t p = 2; p * p <= k && total; ++p) {
    if (k % p) continue;
    uint64_t e = 0;
    while (k % p == 0) {
      k /= p;
      ++e;
    }
    auto base = sl_order_field(n, p);
    auto kernel = checked_pow(p, (e - 1) * (uint64_t(n) * n - 1));
    if (!base || !kernel) return std::nullopt;
    checked_mul(total, *base);
    checked_mul(total, *kernel);
  }
  if (k > 1 && total) {
    auto base = sl_order_field(n, k);
    if (!base) return std::nullopt;
    checked_mul(total, *base);
  }
  return total;
}

GroupSpec GroupSpec::parse(const std::string& text) {
  GroupSpec s;
  s.text = text;
  size_t colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (head == "sym" || head == "cycle" || head == "psl2") {
    auto kv = parse_kv(rest);
    const char* key = head == "sym" ? "m" : head == "cycle" ? "n" : "p";
    s.m = parse_int(get_kv(kv, key), key);
    if (head == "sym") {
      s.family = Family::sym;
      if (s.m < 2) fail(errc::unsupported, "sym needs m >= 2");
    } else if (head == "cycle") {
      s.family = Family::cycle;
      if (s.m < 1) fail(errc::unsupported, "cycle needs n >= 1");
    } else {
      s.family = Family::psl2;
      if (!is_odd_prime(s.m)) fail(errc::unsupported, "psl2 needs an odd prime p");
    }
    return s;
  }
  if (head == "sl" || head == "esl") {
    auto kv = parse_kv(rest);
    s.m = parse_int(get_kv(kv, "m"), "m");
    s.ring = parse_ring(get_kv(kv, "ring"));
    s.gens = get_kv(kv, "gens");
    if (s.ring.kind != Ring::Kind::zmod && s.ring.kind != Ring::Kind::f2tk)
      fail(errc::unsupported, head + " needs a finite ring (zmod<k> or f2t:<k>)");
    if (head == "sl") {
      s.family = Family::sl;
      if (s.m < 3 || s.m % 2 == 0)
        fail(errc::unsupported, "sl needs odd m >= 3 (the sign-fixed even case is not built)");
      if (s.gens != "st" && s.gens != "stu" && s.gens != "stt'" && s.gens != "stt'uu'")
        fail(errc::parse, "sl gens must be one of st, stu, stt', stt'uu'");
      if ((s.gens == "stt'" || s.gens == "stt'uu'") && s.ring.kind != Ring::Kind::f2tk)
        fail(errc::unsupported, "generator tau' requires an f2t ring");
    } else {
      s.family = Family::esl;
      if (s.m < 8 || s.m % 4 != 0) fail(errc::unsupported, "esl needs m = 4n with n >= 2");
      if (s.gens != "hadad") fail(errc::parse, "esl gens must be 'hadad'");
    }
    return s;
  }
  if (head == "limit") {
    size_t comma = rest.find(',');
    std::string sub = rest.substr(0, comma);
    std::string params = comma == std::string::npos ? "" : rest.substr(comma + 1);
    if (sub == "sym") {
      if (!params.empty()) fail(errc::parse, "limit:sym takes no parameters");
      s.family = Family::limit_sym;
      return s;
    }
    if (sub == "gl-shift" || sub == "ut-shift") {
      auto kv = parse_kv(params);
      s.ring = parse_ring(get_kv(kv, "ring"));
      if (s.ring.kind != Ring::Kind::zmod && s.ring.kind != Ring::Kind::integers)
        fail(errc::unsupported, "limit ring must be int or zmod<k>");
      if (sub == "gl-shift") {
        s.family = Family::limit_gl_shift;
        s.gens = get_kv(kv, "gens");
        if (s.gens != "stu" && s.gens != "st")
          fail(errc::parse, "limit:gl-shift gens must be stu or st");
      } else {
        s.family = Family::limit_ut_shift;
        s.gens = "st";
      }
      return s;
    }
    fail(errc::parse, "unknown limit family '" + sub + "'");
  }
  fail(errc::parse, "unknown family '" + head + "'");
}

MarkedGroup::MarkedGroup(const GroupSpec& spec) : spec_(spec) {
  switch (spec.family) {
    case Family::sym: {
      int64_t m = spec.m;
      identity_ = perm_shift(m, 0);
      Perm tau = perm_shift(m, 0);
      std::swap(tau.img[0], tau.img[1]);
      gens_ = {perm_shift(m, 1), tau};
      gen_invs_ = {perm_shift(m, -1), tau};
      uint64_t f = 1;
      bool ok = true;
      for (int64_t i = 2; i <= m; ++i) {
        if (f > UINT64_MAX / uint64_t(i)) {
          ok = false;
          break;
        }
        f *= uint64_t(i);
      }
      if (ok) order_hint_ = f;
      break;
    }
    case Family::cycle: {
      identity_ = perm_shift(spec.m, 0);
      gens_ = {perm_shift(spec.m, 1)};
      gen_invs_ = {perm_shift(spec.m, -1)};
      order_hint_ = uint64_t(spec.m);
      break;
    }
    case Family::psl2: {
      uint64_t p = uint64_t(spec.m);
      identity_ = proj_canonical(p, {1, 0, 0, 1});
      gens_ = {Element(proj_canonical(p, {1, 1, 0, 1})), Element(proj_canonical(p, {0, 1, p - 1, 0}))};
      gen_invs_ = {Element(proj_canonical(p, {1, p - 1, 0, 1})),
                   Element(proj_canonical(p, {0, p - 1, 1, 0}))};
      order_hint_ = p * (p * p - 1) / 2;
      break;
    }
    case Family::sl: {
      const Ring& R = spec.ring;
      uint32_t m = uint32_t(spec.m);
      identity_ = mat_identity(R, m);
      Mat sigma = mat_cycle(R, m);
      Mat sigma_inv{R, m, std::vector<Int>(size_t(m) * m, R.zero())};
      for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j) sigma_inv.a[size_t(j) * m + i] = sigma.a[size_t(i) * m + j];
      gens_ = {sigma};
      gen_invs_ = {sigma_inv};
      auto add_elem = [&](uint32_t i, uint32_t j, const Int& v) {
        gens_.push_back(mat_elementary(R, m, i, j, v));
        gen_invs_.push_back(mat_elementary(R, m, i, j, R.neg(v)));
      };
      add_elem(0, 1, R.one());                       // tau
      if (spec.gens == "stu") add_elem(1, 0, R.one());  // upsilon
      if (spec.gens == "stt'" || spec.gens == "stt'uu'") add_elem(0, 1, R.t());
      if (spec.gens == "stt'uu'") {
        add_elem(1, 0, R.one());
        add_elem(1, 0, R.t());
      }
      order_hint_ = sl_order(spec.m, R);
      break;
    }
    case Family::esl: {
      const Ring& R = spec.ring;
      uint32_t m = uint32_t(spec.m);
      identity_ = mat_identity(R, m);
      for (const Mat& g : hadad_generators(spec.m / 4, R)) {
        gens_.push_back(g);
        // e_{i,j}(a)^{-1} = e_{i,j}(-a): negate the off-diagonal block
        Mat inv = g;
        for (uint32_t r = 0; r < m; ++r)
          for (uint32_t c = 0; c < m; ++c)
            if (r != c) inv.a[size_t(r) * m + c] = R.neg(inv.a[size_t(r) * m + c]);
        gen_invs_.push_back(std::move(inv));
      }
      order_hint_ = sl_order(spec.m, R);
      break;
    }
    case Family::limit_sym: {
      finite_ = false;
      identity_ = ShiftPerm{};
      ShiftPerm tau;
      tau.supp = {{0, 1}, {1, 0}};
      gens_ = {ShiftPerm{1, {}}, tau};
      gen_invs_ = {ShiftPerm{-1, {}}, tau};
      break;
    }
    case Family::limit_gl_shift:
    case Family::limit_ut_shift: {
      finite_ = false;
      const Ring& R = spec.ring;
      identity_ = shift_mat_pure(R, 0);
      // sigma is the matrix with ones at (j+1, j), whose rho-value is -1;
      // this matches the finite families' cyclic permutation matrix.
      gens_ = {shift_mat_pure(R, -1), shift_mat_window2(R, R.one(), R.zero())};
      gen_invs_ = {shift_mat_pure(R, 1), shift_mat_window2(R, R.neg(R.one()), R.zero())};
      if (spec.family == Family::limit_gl_shift && spec.gens == "stu") {
        gens_.push_back(shift_mat_window2(R, R.zero(), R.one()));
        gen_invs_.push_back(shift_mat_window2(R, R.zero(), R.neg(R.one())));
      }
      break;
    }
  }
}

MarkedGroup MarkedGroup::with_generators(const GroupSpec& spec, std::vector<Element> gens,
                                         std::vector<Element> gen_invs) {
  MarkedGroup g(spec);
  if (gens.size() != gen_invs.size() || gens.empty())
    fail(errc::parse, "generator and inverse tuples must match and be nonempty");
  g.gens_ = std::move(gens);
  g.gen_invs_ = std::move(gen_invs);
  return g;
}

const Element& MarkedGroup::generator(int index) const {
  if (index < 1 || index > arity()) fail(errc::arity, "generator index out of range");
  return gens_[size_t(index - 1)];
}

const Element& MarkedGroup::generator_inverse(int index) const {
  if (index < 1 || index > arity()) fail(errc::arity, "generator index out of range");
  return gen_invs_[size_t(index - 1)];
}

Element MarkedGroup::apply_letter(const Element& e, Letter v) const {
  const Element& g = v > 0 ? generator(v) : generator_inverse(-v);
  return mul(e, g, window_cap_);
}

Element MarkedGroup::evaluate(const Word& w) const {
  if (w.arity() != arity())
    fail(errc::arity, "word arity " + std::to_string(w.arity()) + " does not match group arity " +
                          std::to_string(arity()));
  Element e = identity_;
  for (Letter v : w.letters()) e = apply_letter(e, v);
  return e;
}

MarkedGroup make_group(const std::string& spec_text) {
  return MarkedGroup(GroupSpec::parse(spec_text));
}

MarkedGroup make_cycle_marked(int64_t n, const std::vector<int64_t>& residues) {
  if (n < 1) fail(errc::unsupported, "cycle needs n >= 1");
  if (residues.empty()) fail(errc::unsupported, "need at least one residue");
  GroupSpec spec = GroupSpec::parse("cycle:n=" + std::to_string(n));
  std::vector<Element> gens, invs;
  for (int64_t r : residues) {
    gens.push_back(perm_shift(n, r));
    invs.push_back(perm_shift(n, -r));
  }
  return MarkedGroup::with_generators(spec, std::move(gens), std::move(invs));
}

GeneratorOrder order_of_generator(const MarkedGroup& g, int index, uint64_t cap) {
  if (cap < 1) fail(errc::parse, "order cap must be >= 1");
  const Element& s = g.generator(index);
  Element e = s;
  for (uint64_t n = 1; n <= cap; ++n) {
    if (is_identity(e)) return {n, false};
    e = mul(e, s, g.window_cap());
  }
  return {cap, true};
}

std::vector<Mat> hadad_generators(int64_t n, const Ring& ring) {
  if (n < 2) fail(errc::unsupported, "hadad generators need n >= 2");
  if (ring.kind != Ring::Kind::zmod && ring.kind != Ring::Kind::f2tk)
    fail(errc::unsupported, "hadad generators need zmod or f2t ring");
  uint32_t nn = uint32_t(n), m = 4 * nn;

  // ring generators of M_n(ring): I_n, a_i E_{0,1} for the ring generators a_i
  // (a_0 = 1, plus t for the polynomial ring), and the cyclic permutation block.
  auto corner = [&](const Int& v) {
    Mat z{ring, nn, std::vector<Int>(size_t(nn) * nn, ring.zero())};
    z.a[0 * nn + 1] = ring.normalize(v);
    return z;
  };
  std::vector<Mat> blocks;
  blocks.push_back(mat_identity(ring, nn));
  blocks.push_back(corner(ring.one()));
  if (ring.kind == Ring::Kind::f2tk) blocks.push_back(corner(ring.t()));
  blocks.push_back(mat_cycle(ring, nn));

  std::vector<Mat> out;
  for (uint32_t bi = 0; bi < 4; ++bi)
    for (uint32_t bj = 0; bj < 4; ++bj) {
      if (bi == bj) continue;
      for (const Mat& b : blocks)
        for (int sign = 0; sign < 2; ++sign) {
          Mat g = mat_identity(ring, m);
          for (uint32_t r = 0; r < nn; ++r)
            for (uint32_t c = 0; c < nn; ++c) {
              const Int& v = b.a[size_t(r) * nn + c];
              g.a[size_t(bi * nn + r) * m + (bj * nn + c)] =
                  sign ? ring.neg(v) : ring.normalize(v);
            }
          out.push_back(std::move(g));
        }
    }
  return out;
}

}  // namespace cwb
