#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cwb/folner.hpp"
#include "cwb/topology.hpp"

using namespace cwb;

namespace {

// Plain brute force over all nonempty subsets, no pruning, no bit tricks:
// the independent oracle for the exact minimizer.
std::pair<uint64_t, uint64_t> brute_rel(const MarkedGroup& g, int radius) {
  GroupBall ctx = group_ball(g, radius + 1);
  std::vector<std::string> ball;
  for (uint32_t i = 0; i < ctx.elems.size(); ++i)
    if (ctx.level[i] <= radius) ball.push_back(ctx.keys[i]);
  REQUIRE(ball.size() <= 20);
  uint64_t bn = 1, bd = 0;
  for (uint64_t mask = 1; mask < (uint64_t(1) << ball.size()); ++mask) {
    std::set<std::string> y;
    for (size_t i = 0; i < ball.size(); ++i)
      if (mask & (uint64_t(1) << i)) y.insert(ball[i]);
    uint64_t num = boundary(g, ctx, y).size();
    uint64_t den = y.size();
    if (bd == 0 || num * bd < bn * den) {
      bn = num;
      bd = den;
    }
  }
  return {bn, bd};
}

}  // namespace

TEST_CASE("boundary examples") {
  MarkedGroup c9 = make_group("cycle:n=9");
  GroupBall ctx = group_ball(c9, 5);
  std::set<std::string> id{element_key(c9.identity())};
  CHECK(boundary(c9, ctx, id).size() == 2);

  GroupBall whole = group_ball(c9, 9);
  std::set<std::string> all(whole.keys.begin(), whole.keys.end());
  CHECK(boundary(c9, whole, all).empty());

  MarkedGroup s4 = make_group("sym:m=4");
  GroupBall sctx = group_ball(s4, 2);
  std::set<std::string> ball1;
  for (uint32_t i = 0; i < sctx.elems.size(); ++i)
    if (sctx.level[i] <= 1) ball1.insert(sctx.keys[i]);
  // direct enumeration oracle: neighbors of the 1-ball not inside it
  std::set<std::string> expect;
  for (uint32_t i = 0; i < sctx.elems.size(); ++i) {
    if (sctx.level[i] > 1) continue;
    for (int gi = 1; gi <= 2; ++gi)
      for (int sign : {1, -1}) {
        const Element& s = sign > 0 ? s4.generator(gi) : s4.generator_inverse(gi);
        std::string k = element_key(mul(s, sctx.elems[i], 64));
        if (!ball1.count(k)) expect.insert(k);
      }
  }
  CHECK(boundary(s4, sctx, ball1) == expect);
  CHECK_THROWS_AS(boundary(s4, sctx, {}), Error);
  CHECK_THROWS_AS(boundary(s4, sctx, {std::string("nope")}), Error);
}

TEST_CASE("rel exact examples") {
  FolnerEntry e1 = rel(make_group("cycle:n=101"), 1, RelMode::exact);
  CHECK(e1.num == 2);
  CHECK(e1.den == 3);
  CHECK(e1.witness.size() == 3);  // {s^-1, e, s}

  FolnerEntry e2 = rel(make_group("cycle:n=5"), 2, RelMode::exact);
  CHECK(e2.num == 0);
  CHECK(e2.den == 5);  // the whole group, empty boundary

  // subset-enumeration oracle agreement
  for (const char* spec : {"sym:m=4", "sl:m=3,ring=zmod2,gens=st", "cycle:n=7"}) {
    MarkedGroup g = make_group(spec);
    auto [num, den] = brute_rel(g, 2);
    FolnerEntry e = rel(g, 2, RelMode::exact);
    CHECK(e.num * den == num * e.den);
  }
}

TEST_CASE("rel witness recomputes to the reported value") {
  for (const char* spec : {"cycle:n=101", "sym:m=4", "limit:sym"}) {
    MarkedGroup g = make_group(spec);
    FolnerEntry e = rel(g, 2, RelMode::automatic);
    GroupBall ctx = group_ball(g, 3);
    std::set<std::string> y(e.witness.begin(), e.witness.end());
    CHECK(boundary(g, ctx, y).size() == e.num);
    CHECK(y.size() == e.den);
  }
}

TEST_CASE("rel profile of the long cycle") {
  FolnerProfile p = rel_profile(make_group("cycle:n=101"), 3);
  REQUIRE(p.entries.size() == 3);
  CHECK(p.entries[0].num == 2);
  CHECK(p.entries[0].den == 3);
  CHECK(p.entries[1].num == 2);
  CHECK(p.entries[1].den == 5);
  CHECK(p.entries[2].num == 2);
  CHECK(p.entries[2].den == 7);
  for (const auto& e : p.entries) CHECK(e.exact);
  CHECK(p.to_csv() ==
        "R,value_num,value_den,exact,witness_size\n1,2,3,1,3\n2,2,5,1,5\n3,2,7,1,7\n");
}

TEST_CASE("rel profile reaches zero at the diameter") {
  FolnerProfile p = rel_profile(make_group("cycle:n=7"), 3);
  CHECK(p.entries.back().num == 0);
  FolnerProfile s3 = rel_profile(make_group("sym:m=3"), 3);
  CHECK(s3.entries.back().num == 0);
}

TEST_CASE("limit group profile is finite and exact for small radii") {
  FolnerProfile p = rel_profile(make_group("limit:sym"), 2);
  REQUIRE(p.entries.size() == 2);
  for (const auto& e : p.entries) {
    CHECK(e.exact);
    CHECK(e.num > 0);  // infinite group: no finite subset has empty boundary
  }
}

TEST_CASE("heuristic upper-bounds exact") {
  for (const char* spec : {"cycle:n=9", "sym:m=4", "sl:m=3,ring=zmod2,gens=st"}) {
    MarkedGroup g = make_group(spec);
    FolnerEntry ex = rel(g, 2, RelMode::exact);
    FolnerEntry he = rel(g, 2, RelMode::heuristic);
    CHECK_FALSE(he.exact);
    CHECK(he.num * ex.den >= ex.num * he.den);
  }
}

TEST_CASE("exact threshold errors") {
  FolnerOptions opt;
  opt.exact_threshold = 4;
  CHECK_THROWS_AS(rel(make_group("sym:m=4"), 2, RelMode::exact, opt), Error);
  // automatic mode falls back to the heuristic instead
  FolnerEntry e = rel(make_group("sym:m=4"), 2, RelMode::automatic, opt);
  CHECK_FALSE(e.exact);
}

TEST_CASE("continuity across an agreeing pair") {
  // kernels agreeing deep enough force equal exact rel values
  MarkedGroup lim = make_group("limit:sym");
  for (int R : {1, 2})
    for (int64_t m : {9, 11}) {
      MarkedGroup g = make_group("sym:m=" + std::to_string(m));
      FolnerEntry a = rel(g, R, RelMode::exact);
      FolnerEntry b = rel(lim, R, RelMode::exact);
      CHECK(a.num == b.num);
      CHECK(a.den == b.den);
    }
}
