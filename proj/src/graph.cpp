#include "cwb/graph.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <queue>
#include <sstream>

namespace cwb {

using ordered_json = nlohmann::ordered_json;

BfsMetrics CayleyGraph::metrics() const {
  BfsMetrics m;
  for (uint32_t l : level) {
    if (l >= m.sphere_sizes.size()) m.sphere_sizes.resize(l + 1, 0);
    ++m.sphere_sizes[l];
    m.eccentricity = std::max<int64_t>(m.eccentricity, l);
  }
  return m;
}

CayleyGraph build_graph(const MarkedGroup& g, uint64_t vertex_cap, bool keep_elements) {
  if (vertex_cap < 1) fail(errc::parse, "vertex cap must be >= 1");
  if (auto hint = g.order_hint(); hint && *hint > vertex_cap)
    fail(errc::cap_exceeded, "group of order " + std::to_string(*hint) + " exceeds vertex cap " +
                                 std::to_string(vertex_cap));
  CayleyGraph out;
  out.spec_text = g.spec().text;
  out.arity = g.arity();

  std::vector<Element> elems{g.identity()};
  out.keys.push_back(element_key(g.identity()));
  out.index.emplace(out.keys[0], 0);
  out.level.push_back(0);
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> adj(1);

  for (uint32_t u = 0; u < elems.size(); ++u) {
    for (int i = 1; i <= g.arity(); ++i)
      for (int sign : {1, -1}) {
        const Element& s = sign > 0 ? g.generator(i) : g.generator_inverse(i);
        Element v_el = mul(s, elems[u], g.window_cap());
        std::string key = element_key(v_el);
        auto it = out.index.find(key);
        uint32_t v;
        if (it == out.index.end()) {
          if (elems.size() >= vertex_cap)
            fail(errc::cap_exceeded,
                 "vertex cap " + std::to_string(vertex_cap) + " hit: group too large or infinite");
          v = uint32_t(elems.size());
          elems.push_back(std::move(v_el));
          out.keys.push_back(key);
          out.index.emplace(std::move(key), v);
          out.level.push_back(out.level[u] + 1);
          adj.emplace_back();
        } else {
          v = it->second;
        }
        if (v != u) adj[u].emplace_back(v, uint32_t(1) << i);
      }
  }

  // deduplicate, merge labels, symmetrize (u->v implies v->u by construction,
  // but coincident generators can make the label masks asymmetric)
  for (uint32_t u = 0; u < adj.size(); ++u) {
    std::sort(adj[u].begin(), adj[u].end());
    size_t w = 0;
    for (size_t r = 0; r < adj[u].size(); ++r) {
      if (w > 0 && adj[u][w - 1].first == adj[u][r].first)
        adj[u][w - 1].second |= adj[u][r].second;
      else
        adj[u][w++] = adj[u][r];
    }
    adj[u].resize(w);
  }
  for (uint32_t u = 0; u < adj.size(); ++u)
    for (auto& [v, mask] : adj[u]) {
      auto it = std::lower_bound(adj[v].begin(), adj[v].end(), std::make_pair(u, uint32_t(0)));
      if (it != adj[v].end() && it->first == u) {
        it->second |= mask;
        mask = it->second;
      }
    }

  out.offsets.reserve(adj.size() + 1);
  out.offsets.push_back(0);
  for (uint32_t u = 0; u < adj.size(); ++u) {
    for (auto& [v, mask] : adj[u]) {
      out.neighbors.push_back(v);
      out.edge_labels.push_back(mask);
    }
    out.offsets.push_back(uint32_t(out.neighbors.size()));
    out.degree = std::max<int>(out.degree, int(adj[u].size()));
  }
  if (keep_elements) out.elems = std::move(elems);
  return out;
}

int64_t diameter(const CayleyGraph& g) {
  int64_t d = 0;
  for (uint32_t l : g.level) d = std::max<int64_t>(d, l);
  return d;
}

std::vector<uint32_t> bfs_distances(const CayleyGraph& g, uint32_t start) {
  if (start >= g.vertex_count()) fail(errc::not_found, "start vertex out of range");
  std::vector<uint32_t> dist(g.vertex_count(), UINT32_MAX);
  std::queue<uint32_t> q;
  dist[start] = 0;
  q.push(start);
  while (!q.empty()) {
    uint32_t u = q.front();
    q.pop();
    for (uint32_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
      uint32_t v = g.neighbors[e];
      if (dist[v] == UINT32_MAX) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

int64_t diameter_all_pairs(const CayleyGraph& g) {
  if (g.vertex_count() > 1000)
    fail(errc::cap_exceeded, "all-pairs validation is limited to 1000 vertices");
  int64_t d = 0;
  for (uint32_t s = 0; s < g.vertex_count(); ++s)
    for (uint32_t v : bfs_distances(g, s)) d = std::max<int64_t>(d, v);
  return d;
}

int64_t word_length(const CayleyGraph& g, const Element& target) {
  auto it = g.index.find(element_key(target));
  if (it == g.index.end()) fail(errc::not_found, "target element is not a vertex");
  return g.level[it->second];
}

ExportFormat parse_export_format(const std::string& name) {
  if (name == "edges") return ExportFormat::edges;
  if (name == "dot") return ExportFormat::dot;
  if (name == "json") return ExportFormat::json;
  fail(errc::parse, "unknown export format '" + name + "'");
}

std::string export_graph(const CayleyGraph& g, ExportFormat format) {
  std::ostringstream os;
  auto each_edge = [&](auto&& fn) {
    for (uint32_t u = 0; u < g.vertex_count(); ++u)
      for (uint32_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e)
        if (u < g.neighbors[e]) fn(u, g.neighbors[e], g.edge_labels[e]);
  };
  switch (format) {
    case ExportFormat::edges:
      each_edge([&](uint32_t u, uint32_t v, uint32_t) { os << u << ' ' << v << '\n'; });
      return os.str();
    case ExportFormat::dot: {
      os << "graph cayley {\n";
      each_edge([&](uint32_t u, uint32_t v, uint32_t mask) {
        os << "  " << u << " -- " << v << " [label=\"";
        bool first = true;
        for (int i = 1; i <= g.arity; ++i)
          if (mask & (uint32_t(1) << i)) {
            if (!first) os << ',';
            os << 's' << i;
            first = false;
          }
        os << "\"];\n";
      });
      os << "}\n";
      return os.str();
    }
    case ExportFormat::json: {
      ordered_json j;
      j["spec"] = g.spec_text;
      j["vertices"] = g.vertex_count();
      j["degree"] = g.degree;
      j["diameter"] = diameter(g);
      auto edges = ordered_json::array();
      each_edge([&](uint32_t u, uint32_t v, uint32_t) { edges.push_back({u, v}); });
      j["edges"] = std::move(edges);
      return j.dump();
    }
  }
  fail(errc::internal, "bad export format");
}

ElementaryLengthTable elementary_lengths(int64_t m, const Ring& ring, uint64_t vertex_cap) {
  GroupSpec spec = GroupSpec::parse("sl:m=" + std::to_string(m) + ",ring=" + ring.text() +
                                    ",gens=st");
  MarkedGroup g(spec);
  CayleyGraph graph = build_graph(g, vertex_cap);
  std::vector<std::pair<std::string, Int>> args;
  args.emplace_back("1", ring.one());
  if (ring.neg(ring.one()) != ring.one()) args.emplace_back("-1", ring.neg(ring.one()));
  if (ring.kind == Ring::Kind::f2tk && ring.k >= 2) {
    args.emplace_back("t", ring.t());
    if (ring.neg(ring.t()) != ring.t()) args.emplace_back("-t", ring.neg(ring.t()));
  }
  ElementaryLengthTable table;
  for (uint32_t i = 0; i < uint32_t(m); ++i)
    for (uint32_t j = 0; j < uint32_t(m); ++j) {
      if (i == j) continue;
      for (auto& [name, value] : args) {
        Mat e{ring, uint32_t(m), std::vector<Int>(size_t(m) * m, ring.zero())};
        for (uint32_t d = 0; d < uint32_t(m); ++d) e.a[size_t(d) * m + d] = ring.one();
        e.a[size_t(i) * m + j] = ring.normalize(value);
        int64_t len = word_length(graph, Element(e));
        table.rows.push_back({i, j, name, len});
        table.max_length = std::max(table.max_length, len);
      }
    }
  return table;
}

}  // namespace cwb
