#include "cwb/folner.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace cwb {

namespace {

// Bit rows over the context universe; the universe stays small (the candidate
// ball plus its 1-neighborhood), so fixed-width rows suffice.
constexpr size_t kMaxContext = 1024;
using Bits = std::vector<uint64_t>;

struct ExactState {
  size_t words = 0;
  std::vector<Bits> neighbor_rows;  // per candidate, over context ids
  uint64_t best_num = 0, best_den = 0;
  Bits best_mask;

  bool better(uint64_t num, uint64_t den, const Bits& mask) const {
    if (best_den == 0) return true;
    unsigned __int128 lhs = (unsigned __int128)num * best_den;
    unsigned __int128 rhs = (unsigned __int128)best_num * den;
    if (lhs != rhs) return lhs < rhs;
    // canonical order: the subset containing the lowest differing id wins
    for (size_t w = 0; w < mask.size(); ++w) {
      uint64_t diff = mask[w] ^ best_mask[w];
      if (diff) return mask[w] & (diff & -diff);
    }
    return false;
  }
};

void subsets(ExactState& st, size_t n, size_t next, Bits& mask, Bits& uni, uint64_t size) {
  if (size > 0) {
    uint64_t num = 0;
    for (size_t w = 0; w < st.words; ++w) num += std::popcount(uni[w] & ~mask[w]);
    if (st.better(num, size, mask)) {
      st.best_num = num;
      st.best_den = size;
      st.best_mask = mask;
    }
  }
  for (size_t i = next; i < n; ++i) {
    Bits saved = uni;
    mask[i >> 6] |= uint64_t(1) << (i & 63);
    for (size_t w = 0; w < st.words; ++w) uni[w] |= st.neighbor_rows[i][w];
    subsets(st, n, i + 1, mask, uni, size + 1);
    mask[i >> 6] &= ~(uint64_t(1) << (i & 63));
    uni = std::move(saved);
  }
}

}  // namespace

uint64_t GroupBall::count_within(int r) const {
  uint64_t c = 0;
  for (int l : level) c += (l <= r);
  return c;
}

GroupBall group_ball(const MarkedGroup& g, int radius, uint64_t cap) {
  GroupBall b;
  b.radius = radius;
  b.elems.push_back(g.identity());
  b.keys.push_back(element_key(g.identity()));
  b.level.push_back(0);
  b.index.emplace(b.keys[0], 0);
  for (uint32_t u = 0; u < b.elems.size(); ++u) {
    if (b.level[u] == radius) break;  // BFS order: all later vertices are at least this deep
    for (int i = 1; i <= g.arity(); ++i)
      for (int sign : {1, -1}) {
        const Element& s = sign > 0 ? g.generator(i) : g.generator_inverse(i);
        Element f = mul(s, b.elems[u], g.window_cap());
        std::string key = element_key(f);
        if (b.index.count(key)) continue;
        if (b.elems.size() >= cap) fail(errc::cap_exceeded, "ball cap exceeded");
        b.index.emplace(key, uint32_t(b.elems.size()));
        b.elems.push_back(std::move(f));
        b.keys.push_back(std::move(key));
        b.level.push_back(b.level[u] + 1);
      }
  }
  return b;
}

std::set<std::string> boundary(const MarkedGroup& g, const GroupBall& ctx,
                               const std::set<std::string>& y_keys) {
  if (y_keys.empty()) fail(errc::parse, "boundary needs a nonempty set");
  std::set<std::string> out;
  for (const std::string& key : y_keys) {
    auto it = ctx.index.find(key);
    if (it == ctx.index.end()) fail(errc::not_found, "set member outside the context ball");
    for (int i = 1; i <= g.arity(); ++i)
      for (int sign : {1, -1}) {
        const Element& s = sign > 0 ? g.generator(i) : g.generator_inverse(i);
        std::string nk = element_key(mul(s, ctx.elems[it->second], g.window_cap()));
        if (!y_keys.count(nk)) out.insert(std::move(nk));
      }
  }
  return out;
}

namespace {

FolnerEntry entry_from_witness(const MarkedGroup& g, const GroupBall& ctx, int radius,
                               std::set<std::string> witness, bool exact) {
  FolnerEntry e;
  e.radius = radius;
  e.den = witness.size();
  e.num = boundary(g, ctx, witness).size();
  e.exact = exact;
  e.witness.assign(witness.begin(), witness.end());
  return e;
}

FolnerEntry rel_exact(const MarkedGroup& g, const GroupBall& ctx, int radius,
                      const FolnerOptions& opt) {
  // candidates: ball elements sorted by key, ids 0..n-1; then their neighbors
  std::vector<uint32_t> cand;
  for (uint32_t i = 0; i < ctx.elems.size(); ++i)
    if (ctx.level[i] <= radius) cand.push_back(i);
  std::sort(cand.begin(), cand.end(),
            [&](uint32_t a, uint32_t b) { return ctx.keys[a] < ctx.keys[b]; });
  size_t n = cand.size();
  if (n > opt.exact_threshold)
    fail(errc::exact_too_large, "exact minimization over " + std::to_string(n) +
                                    " elements exceeds the threshold " +
                                    std::to_string(opt.exact_threshold));

  // context ids: candidates first, then all neighbor keys (sorted, deduped)
  std::unordered_map<std::string, size_t> context_id;
  for (size_t i = 0; i < n; ++i) context_id.emplace(ctx.keys[cand[i]], i);
  std::vector<std::vector<std::string>> nbr_keys(n);
  std::vector<std::string> extra;
  for (size_t i = 0; i < n; ++i) {
    for (int gi = 1; gi <= g.arity(); ++gi)
      for (int sign : {1, -1}) {
        const Element& s = sign > 0 ? g.generator(gi) : g.generator_inverse(gi);
        std::string nk = element_key(mul(s, ctx.elems[cand[i]], g.window_cap()));
        if (!context_id.count(nk)) extra.push_back(nk);
        nbr_keys[i].push_back(std::move(nk));
      }
  }
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
  for (const std::string& k : extra) context_id.emplace(k, context_id.size());
  size_t C = context_id.size();
  if (C > kMaxContext) fail(errc::exact_too_large, "context universe too large");

  ExactState st;
  st.words = (C + 63) / 64;
  st.neighbor_rows.assign(n, Bits(st.words, 0));
  for (size_t i = 0; i < n; ++i)
    for (const std::string& nk : nbr_keys[i]) {
      size_t id = context_id.at(nk);
      if (id != i) st.neighbor_rows[i][id >> 6] |= uint64_t(1) << (id & 63);
    }
  Bits mask(st.words, 0), uni(st.words, 0);
  subsets(st, n, 0, mask, uni, 0);

  std::set<std::string> witness;
  for (size_t i = 0; i < n; ++i)
    if (st.best_mask[i >> 6] & (uint64_t(1) << (i & 63))) witness.insert(ctx.keys[cand[i]]);
  FolnerEntry e = entry_from_witness(g, ctx, radius, std::move(witness), true);
  if (e.num != st.best_num || e.den != st.best_den)
    fail(errc::internal, "witness recomputation mismatch");
  return e;
}

FolnerEntry rel_heuristic(const MarkedGroup& g, const GroupBall& ctx, int radius) {
  std::vector<std::string> all;
  for (uint32_t i = 0; i < ctx.elems.size(); ++i)
    if (ctx.level[i] <= radius) all.push_back(ctx.keys[i]);
  std::sort(all.begin(), all.end());

  auto ratio = [&](const std::set<std::string>& y) {
    return double(boundary(g, ctx, y).size()) / double(y.size());
  };

  std::set<std::string> best;
  double best_val = 0;
  for (int r = 0; r <= radius; ++r) {
    std::set<std::string> y;
    for (uint32_t i = 0; i < ctx.elems.size(); ++i)
      if (ctx.level[i] <= r) y.insert(ctx.keys[i]);
    // greedy descent: keep applying the best single add/remove move
    double cur = ratio(y);
    bool improved = true;
    while (improved) {
      improved = false;
      std::set<std::string> pick;
      double pick_val = cur;
      for (const std::string& k : all) {
        std::set<std::string> trial = y;
        if (trial.count(k)) {
          trial.erase(k);
          if (trial.empty()) continue;
        } else {
          trial.insert(k);
        }
        double v = ratio(trial);
        if (v < pick_val) {
          pick_val = v;
          pick = std::move(trial);
        }
      }
      if (pick_val < cur) {
        y = std::move(pick);
        cur = pick_val;
        improved = true;
      }
    }
    if (best.empty() || cur < best_val) {
      best = std::move(y);
      best_val = cur;
    }
  }
  return entry_from_witness(g, ctx, radius, std::move(best), false);
}

}  // namespace

FolnerEntry rel(const MarkedGroup& g, int radius, RelMode mode, const FolnerOptions& opt) {
  if (radius < 1) fail(errc::parse, "rel needs radius >= 1");
  GroupBall ctx = group_ball(g, radius + 1, opt.ball_cap);
  uint64_t ball_size = ctx.count_within(radius);
  if (mode == RelMode::automatic)
    mode = ball_size <= opt.exact_threshold ? RelMode::exact : RelMode::heuristic;
  return mode == RelMode::exact ? rel_exact(g, ctx, radius, opt) : rel_heuristic(g, ctx, radius);
}

FolnerProfile rel_profile(const MarkedGroup& g, int rmax, const FolnerOptions& opt) {
  if (rmax < 1) fail(errc::parse, "rel profile needs rmax >= 1");
  FolnerProfile p;
  uint64_t prev_num = 0, prev_den = 0;  // last exact entry
  for (int r = 1; r <= rmax; ++r) {
    p.entries.push_back(rel(g, r, RelMode::automatic, opt));
    const FolnerEntry& e = p.entries.back();
    if (e.exact && prev_den) {
      // Rel(G;R) >= Rel(G;R+1); a violation would falsify the implementation
      unsigned __int128 lhs = (unsigned __int128)e.num * prev_den;
      unsigned __int128 rhs = (unsigned __int128)prev_num * e.den;
      if (lhs > rhs) fail(errc::internal, "exact Rel increased with the radius");
    }
    if (e.exact) {
      prev_num = e.num;
      prev_den = e.den;
    }
  }
  return p;
}

std::string FolnerProfile::to_csv() const {
  std::ostringstream os;
  os << "R,value_num,value_den,exact,witness_size\n";
  for (const FolnerEntry& e : entries)
    os << e.radius << ',' << e.num << ',' << e.den << ',' << (e.exact ? 1 : 0) << ','
       << e.witness.size() << '\n';
  return os.str();
}

}  // namespace cwb
