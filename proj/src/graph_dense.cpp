#include <atomic>
#include <bit>
#include <cstring>
#include <thread>

#include "cwb/graph.hpp"

namespace cwb {

namespace {

// A matrix state is m*m digits in radix D, packed little-endian into a u64
// index (row 0 in the lowest digits). D = k for zmod, 2^k for f2t.
struct Packing {
  int m = 0;
  uint64_t D = 0;
  int bits = 0;        // digit width for the xor rings, 0 otherwise
  uint64_t k = 0;      // zmod modulus when not a xor ring
  bool xor_add = false;
  uint64_t Dm = 0;     // D^m, one row block
  uint64_t Drest = 0;  // D^(m(m-1))
  uint64_t total = 0;  // D^(m*m)
  std::vector<uint64_t> row_pow;  // D^(m*r)

  bool init(const GroupSpec& spec) {
    m = int(spec.m);
    if (spec.ring.kind == Ring::Kind::zmod) {
      D = spec.ring.k;
      k = spec.ring.k;
      xor_add = (k == 2);
      bits = xor_add ? 1 : 0;
    } else if (spec.ring.kind == Ring::Kind::f2tk) {
      // TODO: widen the packed index to unsigned __int128 to reach f2t degrees past 8
      if (spec.ring.k > 8) return false;
      bits = int(spec.ring.k);
      D = uint64_t(1) << bits;
      xor_add = true;
    } else {
      return false;
    }
    unsigned __int128 t = 1;
    for (int i = 0; i < m * m; ++i) {
      t *= D;
      if (t > (unsigned __int128)UINT64_MAX) return false;
    }
    total = uint64_t(t);
    // row_pow[r] = D^(m*r)
    row_pow.assign(size_t(m) + 1, 1);
    for (int r = 1; r <= m; ++r) {
      row_pow[r] = row_pow[r - 1];
      for (int i = 0; i < m; ++i) row_pow[r] *= D;
    }
    Dm = row_pow[1];
    Drest = row_pow[size_t(m) - 1];
    return true;
  }

  uint64_t identity() const {
    uint64_t idx = 0, dp = 1;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i == j) idx += dp;
        dp *= D;
      }
    }
    return idx;
  }
};

struct RowOp {
  enum class Kind { rot_down, rot_up, row_add } kind;
  int dst = 0, src = 0;
  int64_t coef = 0;   // signed scalar for zmod, ignored for xor rings
  int tshift = 0;     // multiply src by t^tshift (xor rings)
  bool negate = false;

  // dst_row' = combined[dst * Dm + src], precomputed when the row space is small
  std::vector<uint32_t> table;

  bool operator==(const RowOp& o) const {
    return kind == o.kind && dst == o.dst && src == o.src && coef == o.coef &&
           tshift == o.tshift && negate == o.negate;
  }
};

uint64_t row_add_combine(const Packing& p, const RowOp& op, uint64_t dst, uint64_t src) {
  if (p.xor_add) {
    uint64_t digit_mask = p.D - 1;
    uint64_t shifted = src;
    for (int s = 0; s < op.tshift; ++s) {
      // per-digit multiply by t: shift within each digit field
      uint64_t keep = 0;
      for (int d = 0; d < p.m; ++d)
        keep |= ((shifted >> (d * p.bits)) & (digit_mask >> 1)) << (d * p.bits);
      shifted = keep << 1;
    }
    return dst ^ shifted;
  }
  uint64_t out = 0, dp = 1;
  for (int d = 0; d < p.m; ++d) {
    uint64_t a = (dst / dp) % p.D;
    uint64_t b = (src / dp) % p.D;
    int64_t c = (op.coef % int64_t(p.k) + int64_t(p.k)) % int64_t(p.k);
    uint64_t v = (a + b * uint64_t(c)) % p.k;
    out += v * dp;
    dp *= p.D;
  }
  return out;
}

uint64_t apply_op(const Packing& p, const RowOp& op, uint64_t idx) {
  switch (op.kind) {
    case RowOp::Kind::rot_down:
      return idx / p.Drest + (idx % p.Drest) * p.Dm;
    case RowOp::Kind::rot_up:
      return (idx % p.Dm) * p.Drest + idx / p.Dm;
    case RowOp::Kind::row_add: {
      uint64_t dst = (idx / p.row_pow[op.dst]) % p.Dm;
      uint64_t src = (idx / p.row_pow[op.src]) % p.Dm;
      uint64_t out = op.table.empty() ? row_add_combine(p, op, dst, src)
                                      : op.table[dst * p.Dm + src];
      return idx + (out - dst) * p.row_pow[op.dst];
    }
  }
  return idx;
}

std::vector<RowOp> ops_for(const GroupSpec& spec) {
  bool char2 = spec.ring.characteristic_two() || (spec.ring.kind == Ring::Kind::zmod && spec.ring.k == 2);
  std::vector<RowOp> ops;
  auto push = [&](RowOp op) {
    for (const RowOp& o : ops)
      if (o == op) return;
    ops.push_back(op);
  };
  push({RowOp::Kind::rot_down, 0, 0, 0, 0, false});
  push({RowOp::Kind::rot_up, 0, 0, 0, 0, false});
  auto add_pair = [&](int dst, int src, int tshift) {
    push({RowOp::Kind::row_add, dst, src, 1, tshift, false});
    if (!char2) push({RowOp::Kind::row_add, dst, src, -1, tshift, false});
  };
  const std::string& g = spec.gens;
  add_pair(0, 1, 0);                                   // tau
  if (g == "stu" || g == "stt'uu'") add_pair(1, 0, 0); // upsilon
  if (g == "stt'" || g == "stt'uu'") add_pair(0, 1, 1);
  if (g == "stt'uu'") add_pair(1, 0, 1);
  return ops;
}

// Digits of a finite-matrix element, packed; used to locate target elements.
uint64_t pack_mat(const Packing& p, const Mat& e) {
  uint64_t idx = 0, dp = 1;
  for (int i = 0; i < p.m; ++i)
    for (int j = 0; j < p.m; ++j) {
      uint64_t digit = e.ring.normalize(e.a[size_t(i) * p.m + j]).get_ui();
      idx += digit * dp;
      dp *= p.D;
    }
  return idx;
}

class Bitmap {
public:
  explicit Bitmap(uint64_t bits) : words_((bits + 63) / 64, 0) {}
  bool test(uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(uint64_t i) { words_[i >> 6] |= uint64_t(1) << (i & 63); }
  bool test_and_set_atomic(uint64_t i) {
    std::atomic_ref<uint64_t> w(words_[i >> 6]);
    uint64_t bit = uint64_t(1) << (i & 63);
    return w.fetch_or(bit, std::memory_order_relaxed) & bit;
  }
  void set_atomic(uint64_t i) {
    std::atomic_ref<uint64_t> w(words_[i >> 6]);
    w.fetch_or(uint64_t(1) << (i & 63), std::memory_order_relaxed);
  }
  void clear() { std::memset(words_.data(), 0, words_.size() * 8); }
  uint64_t popcount() const {
    uint64_t c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }
  const std::vector<uint64_t>& words() const { return words_; }
  size_t word_count() const { return words_.size(); }

private:
  std::vector<uint64_t> words_;
};

}  // namespace

bool dense_bfs_feasible(const GroupSpec& spec, uint64_t memory_budget) {
  if (spec.family != Family::sl) return false;
  Packing p;
  if (!p.init(spec)) return false;
  uint64_t bitmap_bytes = (p.total + 7) / 8;
  return bitmap_bytes <= memory_budget / 3;
}

DenseBfsResult dense_bfs(const DenseBfsRequest& req) {
  if (req.spec.family != Family::sl)
    fail(errc::unsupported, "dense search handles the sl families only");
  Packing p;
  if (!p.init(req.spec))
    fail(errc::cap_exceeded, "state space of " + req.spec.text + " is not packable into 64 bits");
  uint64_t bitmap_bytes = (p.total + 7) / 8;
  if (bitmap_bytes > req.memory_budget / 3)
    fail(errc::cap_exceeded, "state space of " + req.spec.text + " needs 3x" +
                                 std::to_string(bitmap_bytes >> 20) + " MiB, over the budget");

  std::vector<RowOp> ops = ops_for(req.spec);
  // tabulated row combination for the non-xor rings where the row space is small
  for (RowOp& op : ops) {
    if (op.kind != RowOp::Kind::row_add || p.xor_add || p.Dm > 2500) continue;
    op.table.resize(size_t(p.Dm) * p.Dm);
    for (uint64_t dst = 0; dst < p.Dm; ++dst)
      for (uint64_t src = 0; src < p.Dm; ++src)
        op.table[dst * p.Dm + src] = uint32_t(row_add_combine(p, op, dst, src));
  }

  std::vector<uint64_t> targets;
  for (const Mat& t : req.targets) {
    if (int64_t(t.n) != req.spec.m) fail(errc::not_found, "target size does not match the family");
    targets.push_back(pack_mat(p, t));
  }

  DenseBfsResult res;
  res.target_levels.assign(targets.size(), -1);
  Bitmap visited(p.total), cur(p.total), nxt(p.total);
  uint64_t id = p.identity();
  visited.set(id);
  cur.set(id);
  res.sphere_sizes.push_back(1);
  res.order = 1;
  for (size_t t = 0; t < targets.size(); ++t)
    if (targets[t] == id) res.target_levels[t] = 0;

  int threads = std::max(1, req.threads);
  int64_t level = 0;
  while (true) {
    uint64_t found = 0;
    auto worker = [&](size_t w_begin, size_t w_end) {
      const auto& words = cur.words();
      for (size_t wi = w_begin; wi < w_end; ++wi) {
        uint64_t w = words[wi];
        while (w) {
          int b = std::countr_zero(w);
          w &= w - 1;
          uint64_t idx = (uint64_t(wi) << 6) | uint64_t(b);
          for (const RowOp& op : ops) {
            uint64_t n = apply_op(p, op, idx);
            if (!visited.test_and_set_atomic(n)) nxt.set_atomic(n);
          }
        }
      }
    };
    if (threads == 1) {
      worker(0, cur.word_count());
    } else {
      std::vector<std::thread> pool;
      size_t chunk = (cur.word_count() + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        size_t b = std::min(cur.word_count(), size_t(t) * chunk);
        size_t e = std::min(cur.word_count(), b + chunk);
        pool.emplace_back(worker, b, e);
      }
      for (auto& th : pool) th.join();
    }
    found = nxt.popcount();
    if (found == 0) break;
    ++level;
    res.order += found;
    res.sphere_sizes.push_back(found);
    std::swap(cur, nxt);
    nxt.clear();
    for (size_t t = 0; t < targets.size(); ++t)
      if (res.target_levels[t] < 0 && cur.test(targets[t])) res.target_levels[t] = level;
  }
  res.diameter = level;
  return res;
}

DiameterResult diameter_of(const GroupSpec& spec, uint64_t vertex_cap, uint64_t memory_budget,
                           int threads) {
  MarkedGroup g(spec);
  auto hint = g.order_hint();
  if (hint && *hint <= vertex_cap) {
    CayleyGraph graph = build_graph(g, vertex_cap);
    return {diameter(graph), graph.vertex_count(), "explicit"};
  }
  if (dense_bfs_feasible(spec, memory_budget)) {
    DenseBfsRequest req;
    req.spec = spec;
    req.memory_budget = memory_budget;
    req.threads = threads;
    DenseBfsResult r = dense_bfs(req);
    return {r.diameter, r.order, "dense"};
  }
  fail(errc::cap_exceeded, "no strategy fits " + spec.text + ": order " +
                               (hint ? std::to_string(*hint) : std::string("unknown")) +
                               " over vertex cap and state space over the memory budget");
}

}  // namespace cwb
