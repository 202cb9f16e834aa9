#include "cwb/cdu.hpp"

#include <nlohmann/json.hpp>

namespace cwb {

using ordered_json = nlohmann::ordered_json;

CoarseUnion CoarseUnion::build(const FamilySpec& family, uint64_t vertex_cap) {
  CoarseUnion u;
  u.family_base_ = family.base;
  for (size_t i = 0; i < family.size(); ++i) {
    GroupSpec spec = family.member(i);
    MarkedGroup g(spec);
    CayleyGraph graph = build_graph(g, vertex_cap);
    Component c;
    c.index = family.member_index(i);
    c.spec = spec.text;
    c.size = graph.vertex_count();
    c.diameter = diameter(graph);
    if (!u.graphs_.emplace(c.index, std::move(graph)).second)
      fail(errc::parse, "duplicate component index " + std::to_string(c.index));
    u.groups_.emplace(c.index, std::move(g));
    u.components_.push_back(std::move(c));
  }
  return u;
}

const CoarseUnion::Component& CoarseUnion::component(int64_t index) const {
  for (const Component& c : components_)
    if (c.index == index) return c;
  fail(errc::not_found, "no component with index " + std::to_string(index));
}

const CayleyGraph& CoarseUnion::graph(int64_t index) const {
  auto it = graphs_.find(index);
  if (it == graphs_.end()) fail(errc::not_found, "no component with index " + std::to_string(index));
  return it->second;
}

int64_t CoarseUnion::dist(int64_t m, uint32_t a, int64_t n, uint32_t b) const {
  const Component& cm = component(m);
  const Component& cn = component(n);
  if (a >= cm.size || b >= cn.size) fail(errc::not_found, "vertex outside its component");
  if (m != n) return cm.diameter + cn.diameter + m + n;
  std::vector<uint32_t> d = bfs_distances(graph(m), a);
  return d[b];
}

int64_t CoarseUnion::dist_words(int64_t m, const Word& a, int64_t n, const Word& b) const {
  auto resolve = [&](int64_t idx, const Word& w) -> uint32_t {
    const MarkedGroup& g = groups_.at(idx);
    const CayleyGraph& gr = graph(idx);
    auto it = gr.index.find(element_key(g.evaluate(w)));
    if (it == gr.index.end()) fail(errc::not_found, "word does not land in the component");
    return it->second;
  };
  return dist(m, resolve(m, a), n, resolve(n, b));
}

std::string CoarseUnion::to_json(uint64_t matrix_limit) const {
  ordered_json j;
  j["family"] = family_base_;
  auto comps = ordered_json::array();
  for (const Component& c : components_) {
    ordered_json cj;
    cj["index"] = c.index;
    cj["size"] = c.size;
    cj["diameter"] = c.diameter;
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  j["metric"] = "remark-cdu-v1";
  ordered_json mats = ordered_json::object();
  bool omitted = false;
  for (const Component& c : components_) {
    if (c.size > matrix_limit) {
      omitted = true;
      continue;
    }
    const CayleyGraph& gr = graph(c.index);
    auto rows = ordered_json::array();
    for (uint32_t v = 0; v < c.size; ++v) {
      auto d = bfs_distances(gr, v);
      rows.push_back(ordered_json(d));
    }
    mats[std::to_string(c.index)] = std::move(rows);
  }
  j["matrices"] = std::move(mats);
  j["matrices_omitted"] = omitted;
  return j.dump();
}

ImportedUnion ImportedUnion::from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::parse, "bad union JSON");
  if (j.value("metric", "") != std::string("remark-cdu-v1"))
    fail(errc::parse, "unknown union metric tag");
  ImportedUnion u;
  for (const auto& cj : j.at("components")) {
    CoarseUnion::Component c;
    c.index = cj.at("index").get<int64_t>();
    c.size = cj.at("size").get<uint64_t>();
    c.diameter = cj.at("diameter").get<int64_t>();
    u.components_.push_back(c);
  }
  for (auto& [key, rows] : j.at("matrices").items()) {
    std::vector<std::vector<int64_t>> mat;
    for (const auto& row : rows) mat.push_back(row.get<std::vector<int64_t>>());
    u.matrices_.emplace(std::stoll(key), std::move(mat));
  }
  return u;
}

bool ImportedUnion::has_matrix(int64_t index) const { return matrices_.count(index) > 0; }

int64_t ImportedUnion::dist(int64_t m, uint32_t a, int64_t n, uint32_t b) const {
  const CoarseUnion::Component *cm = nullptr, *cn = nullptr;
  for (const auto& c : components_) {
    if (c.index == m) cm = &c;
    if (c.index == n) cn = &c;
  }
  if (!cm || !cn) fail(errc::not_found, "unknown component index");
  if (a >= cm->size || b >= cn->size) fail(errc::not_found, "vertex outside its component");
  if (m != n) return cm->diameter + cn->diameter + m + n;
  auto it = matrices_.find(m);
  if (it == matrices_.end()) fail(errc::not_found, "matrix omitted for component");
  return it->second[a][b];
}

}  // namespace cwb
