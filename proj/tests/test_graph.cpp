#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "cwb/graph.hpp"
#include "cwb/topology.hpp"

using namespace cwb;

namespace {

Word random_word(std::mt19937_64& rng, int arity, int len) {
  std::uniform_int_distribution<int> d(0, 2 * arity - 1);
  std::vector<Letter> raw;
  for (int i = 0; i < len; ++i) raw.push_back(letter_from_rank(d(rng)));
  return reduce(arity, raw);
}

// Meet-in-the-middle distance oracle from the identity, independent of the
// graph machinery: expands balls around the identity and around the target.
int64_t bidirectional_length(const MarkedGroup& g, const Element& target, int max_radius = 32) {
  std::map<std::string, int> fwd{{element_key(g.identity()), 0}};
  std::map<std::string, int> bwd{{element_key(target), 0}};
  std::vector<Element> ffront{g.identity()}, bfront{target};
  if (bwd.count(element_key(g.identity()))) return 0;
  for (int r = 1; r <= max_radius; ++r) {
    auto& front = (r % 2 == 1) ? ffront : bfront;
    auto& mine = (r % 2 == 1) ? fwd : bwd;
    auto& other = (r % 2 == 1) ? bwd : fwd;
    int depth = (r + 1) / 2;
    std::vector<Element> next;
    for (const Element& e : front)
      for (int i = 1; i <= g.arity(); ++i)
        for (int sign : {1, -1}) {
          Element f = mul(sign > 0 ? g.generator(i) : g.generator_inverse(i), e, g.window_cap());
          std::string key = element_key(f);
          if (mine.emplace(key, depth).second) next.push_back(std::move(f));
        }
    front = std::move(next);
    int64_t best = -1;
    for (auto& [key, d1] : mine) {
      auto it = other.find(key);
      if (it != other.end() && (best < 0 || d1 + it->second < best)) best = d1 + it->second;
    }
    if (best >= 0) return best;
  }
  return -1;
}

}  // namespace

TEST_CASE("build examples") {
  CayleyGraph c6 = build_graph(make_group("cycle:n=6"));
  CHECK(c6.vertex_count() == 6);
  CHECK(c6.degree == 2);
  CHECK(c6.edge_count() == 6);

  CayleyGraph s4 = build_graph(make_group("sym:m=4"));
  CHECK(s4.vertex_count() == 24);
  CHECK(s4.degree == 3);

  CayleyGraph sl32 = build_graph(make_group("sl:m=3,ring=zmod2,gens=st"));
  CHECK(sl32.vertex_count() == 168);

  CHECK_THROWS_AS(build_graph(make_group("sym:m=8"), 100), Error);
  CHECK_THROWS_AS(build_graph(make_group("limit:sym"), 1000), Error);
}

TEST_CASE("graph structure invariants") {
  for (const char* spec : {"cycle:n=7", "sym:m=4", "psl2:p=5", "sl:m=3,ring=zmod3,gens=stu"}) {
    CayleyGraph g = build_graph(make_group(spec));
    // adjacency is symmetric, simple, sorted, no self loops
    for (uint32_t u = 0; u < g.vertex_count(); ++u) {
      std::set<uint32_t> seen;
      for (uint32_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
        uint32_t v = g.neighbors[e];
        CHECK(v != u);
        CHECK(seen.insert(v).second);
        bool back = false;
        for (uint32_t f = g.offsets[v]; f < g.offsets[v + 1]; ++f)
          if (g.neighbors[f] == u) {
            back = true;
            CHECK(g.edge_labels[f] == g.edge_labels[e]);
          }
        CHECK(back);
      }
    }
    // connectivity: sphere sizes add up
    BfsMetrics m = g.metrics();
    uint64_t total = 0;
    for (uint64_t s : m.sphere_sizes) total += s;
    CHECK(total == g.vertex_count());
    CHECK(m.eccentricity == diameter(g));
  }
}

TEST_CASE("diameter examples and oracle") {
  CHECK(diameter(build_graph(make_group("cycle:n=7"))) == 3);
  for (int n = 3; n <= 20; ++n)
    CHECK(diameter(build_graph(make_group("cycle:n=" + std::to_string(n)))) == n / 2);

  CayleyGraph s3 = build_graph(make_group("sym:m=3"));
  CHECK(diameter(s3) == diameter_all_pairs(s3));
  CayleyGraph sl33 = build_graph(make_group("sl:m=3,ring=zmod3,gens=st"));
  CHECK(diameter(sl33) > 0);
  CayleyGraph p5 = build_graph(make_group("psl2:p=5"));
  CHECK(diameter(p5) == diameter_all_pairs(p5));
}

TEST_CASE("word length examples and bidirectional oracle") {
  MarkedGroup c9 = make_group("cycle:n=9");
  CayleyGraph g9 = build_graph(c9);
  CHECK(word_length(g9, c9.evaluate(Word::parse(1, "s1.s1.s1.s1"))) == 4);

  MarkedGroup s5 = make_group("sym:m=5");
  CayleyGraph gs5 = build_graph(s5);
  CHECK(word_length(gs5, s5.generator(2)) == 1);

  MarkedGroup sl2 = make_group("sl:m=3,ring=zmod2,gens=st");
  CayleyGraph gsl = build_graph(sl2);
  Ring z2 = Ring::zmod(2);
  Mat e13{z2, 3, {Int(1), Int(0), Int(1), Int(0), Int(1), Int(0), Int(0), Int(0), Int(1)}};
  int64_t len = word_length(gsl, Element(e13));
  CHECK(len == bidirectional_length(sl2, Element(e13)));
  CHECK(len > 1);

  Mat missing{Ring::zmod(3), 3, std::vector<Int>(9, Int(0))};
  CHECK_THROWS_AS(word_length(gsl, Element(missing)), Error);
}

TEST_CASE("sphere sizes match vol on word balls") {
  for (const char* spec : {"cycle:n=9", "sym:m=4", "sl:m=3,ring=zmod2,gens=st", "psl2:p=7"}) {
    MarkedGroup g = make_group(spec);
    CayleyGraph graph = build_graph(g);
    BfsMetrics m = graph.metrics();
    for (int r = 1; r <= 4; ++r) {
      uint64_t ball_r = vol(g, enumerate_ball(g.arity(), r));
      uint64_t ball_r1 = vol(g, enumerate_ball(g.arity(), r - 1));
      uint64_t sphere = r < int(m.sphere_sizes.size()) ? m.sphere_sizes[r] : 0;
      CHECK(ball_r - ball_r1 == sphere);
    }
  }
}

TEST_CASE("degree bound with equality iff no involutions or coincidences") {
  CHECK(build_graph(make_group("sl:m=3,ring=zmod5,gens=stu")).degree == 6);  // full 2k
  CHECK(build_graph(make_group("sym:m=5")).degree == 3);                     // tau involutive
  CHECK(build_graph(make_group("cycle:n=2")).degree == 1);                   // s = s^-1
  CHECK(build_graph(make_group("sym:m=2")).degree == 1);                     // sigma = tau
}

TEST_CASE("contractivity of the quotient map") {
  std::mt19937_64 rng(53);
  MarkedGroup g = make_group("sl:m=3,ring=zmod2,gens=st");
  CayleyGraph graph = build_graph(g);
  for (int it = 0; it < 300; ++it) {
    Word a = random_word(rng, 2, it % 14);
    Word b = random_word(rng, 2, (it * 3) % 14);
    // d_S(pi(a), pi(b)) <= free distance = length of reduced a b^-1
    Word ab = concat(a, invert(b));
    uint32_t va = graph.index.at(element_key(g.evaluate(a)));
    uint32_t vb = graph.index.at(element_key(g.evaluate(b)));
    std::vector<uint32_t> dist = bfs_distances(graph, va);
    CHECK(dist[vb] <= ab.length());
  }
}

TEST_CASE("exports") {
  CayleyGraph c3 = build_graph(make_group("cycle:n=3"));
  CHECK(export_graph(c3, ExportFormat::edges) == "0 1\n0 2\n1 2\n");

  // dot round-trip: same edge set
  std::string dot = export_graph(c3, ExportFormat::dot);
  std::set<std::pair<int, int>> edges;
  size_t pos = 0;
  while ((pos = dot.find(" -- ", pos)) != std::string::npos) {
    size_t line_start = dot.rfind('\n', pos) + 1;
    int u = std::stoi(dot.substr(line_start, pos - line_start));
    int v = std::stoi(dot.substr(pos + 4));
    edges.insert({u, v});
    ++pos;
  }
  CHECK(edges == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});

  // json export is consistent with the graph ops
  std::string js = export_graph(c3, ExportFormat::json);
  CHECK(js.find("\"degree\":2") != std::string::npos);
  CHECK(js.find("\"diameter\":1") != std::string::npos);
  CHECK(parse_export_format("edges") == ExportFormat::edges);
  CHECK_THROWS_AS(parse_export_format("gml"), Error);
}

TEST_CASE("elementary lengths") {
  ElementaryLengthTable t2 = elementary_lengths(3, Ring::zmod(2));
  CHECK(t2.rows.size() == 6);  // 6 positions, single argument since 1 = -1 mod 2
  for (const auto& row : t2.rows) CHECK(row.length >= 1);

  ElementaryLengthTable t3 = elementary_lengths(3, Ring::zmod(3));
  CHECK(t3.rows.size() == 12);  // 6 positions x {1, -1}
  int64_t diam = diameter(build_graph(make_group("sl:m=3,ring=zmod3,gens=st")));
  for (const auto& row : t3.rows) CHECK(row.length <= diam);
  CHECK(t3.max_length <= diam);
}

TEST_CASE("dense search agrees with the explicit graph") {
  for (const char* text : {"sl:m=3,ring=zmod2,gens=st", "sl:m=3,ring=zmod3,gens=stu",
                           "sl:m=3,ring=zmod4,gens=st", "sl:m=3,ring=f2t:2,gens=stt'"}) {
    GroupSpec spec = GroupSpec::parse(text);
    CayleyGraph g = build_graph(MarkedGroup(spec));
    DenseBfsRequest req;
    req.spec = spec;
    DenseBfsResult r = dense_bfs(req);
    CHECK(r.order == g.vertex_count());
    CHECK(r.diameter == diameter(g));
    BfsMetrics m = g.metrics();
    REQUIRE(r.sphere_sizes.size() == m.sphere_sizes.size());
    for (size_t i = 0; i < m.sphere_sizes.size(); ++i)
      CHECK(r.sphere_sizes[i] == m.sphere_sizes[i]);
  }
}

TEST_CASE("dense search locates targets at the right level") {
  GroupSpec spec = GroupSpec::parse("sl:m=3,ring=zmod3,gens=st");
  MarkedGroup g(spec);
  CayleyGraph graph = build_graph(g);
  Ring z3 = Ring::zmod(3);
  DenseBfsRequest req;
  req.spec = spec;
  Mat e21{z3, 3, {Int(1), Int(0), Int(0), Int(1), Int(1), Int(0), Int(0), Int(0), Int(1)}};
  Mat id3{z3, 3, {Int(1), Int(0), Int(0), Int(0), Int(1), Int(0), Int(0), Int(0), Int(1)}};
  req.targets = {e21, id3};
  DenseBfsResult r = dense_bfs(req);
  CHECK(r.target_levels[1] == 0);
  CHECK(r.target_levels[0] == word_length(graph, Element(e21)));
}

TEST_CASE("dense search is thread invariant") {
  GroupSpec spec = GroupSpec::parse("sl:m=3,ring=zmod5,gens=stu");
  DenseBfsRequest req;
  req.spec = spec;
  req.threads = 1;
  DenseBfsResult a = dense_bfs(req);
  req.threads = 2;
  DenseBfsResult b = dense_bfs(req);
  CHECK(a.order == b.order);
  CHECK(a.diameter == b.diameter);
  CHECK(a.sphere_sizes == b.sphere_sizes);
  CHECK(a.order == 372000);  // |SL(3, Z/5)|
}

TEST_CASE("diameter strategy dispatch") {
  DiameterResult small = diameter_of(GroupSpec::parse("cycle:n=12"));
  CHECK(small.method == "explicit");
  CHECK(small.diameter == 6);

  DiameterResult dense = diameter_of(GroupSpec::parse("sl:m=3,ring=zmod3,gens=st"), 100);
  CHECK(dense.method == "dense");
  CHECK(dense.diameter == diameter_of(GroupSpec::parse("sl:m=3,ring=zmod3,gens=st")).diameter);

  CHECK_THROWS_AS(diameter_of(GroupSpec::parse("sym:m=16"), 1000, 1 << 20), Error);
}

TEST_CASE("relabeling leaves metric quantities unchanged") {
  std::mt19937_64 rng(59);
  CayleyGraph g = build_graph(make_group("psl2:p=7"));
  // random relabeling applied to the adjacency only
  std::vector<uint32_t> perm(g.vertex_count());
  for (uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::set<uint32_t>> adj(g.vertex_count());
  for (uint32_t u = 0; u < g.vertex_count(); ++u)
    for (uint32_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e)
      adj[perm[u]].insert(perm[g.neighbors[e]]);
  // eccentricity of the relabeled identity equals the diameter
  std::vector<int> dist(g.vertex_count(), -1);
  std::vector<uint32_t> q{perm[0]};
  dist[perm[0]] = 0;
  int64_t ecc = 0;
  for (size_t h = 0; h < q.size(); ++h) {
    uint32_t u = q[h];
    for (uint32_t v : adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        ecc = std::max<int64_t>(ecc, dist[v]);
        q.push_back(v);
      }
  }
  CHECK(ecc == diameter(g));
}
