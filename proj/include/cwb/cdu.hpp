#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cwb/family.hpp"
#include "cwb/graph.hpp"

namespace cwb {

// Coarse disjoint union of a family of finite Cayley graphs with the metric
//   d(a,b) = d_m(a,b)                                   same component m,
//   d(a,b) = diam(X_m) + diam(X_n) + m + n              components m != n,
// where the component index is the family parameter itself.
class CoarseUnion {
public:
  struct Component {
    int64_t index = 0;
    std::string spec;
    uint64_t size = 0;
    int64_t diameter = 0;
  };

  static CoarseUnion build(const FamilySpec& family, uint64_t vertex_cap = 2'000'000);

  const std::vector<Component>& components() const { return components_; }
  const std::string& family_base() const { return family_base_; }
  const CayleyGraph& graph(int64_t index) const;  // component graph, built eagerly

  // distance between (component index, vertex id) pairs
  int64_t dist(int64_t m, uint32_t a, int64_t n, uint32_t b) const;
  // convenience: elements addressed by words evaluated in their component
  int64_t dist_words(int64_t m, const Word& a, int64_t n, const Word& b) const;

  std::string to_json(uint64_t matrix_limit = 500) const;

private:
  std::string family_base_;
  std::vector<Component> components_;
  std::map<int64_t, CayleyGraph> graphs_;
  std::map<int64_t, MarkedGroup> groups_;
  const Component& component(int64_t index) const;
};

// Reconstructed union from an export: answers the same distance queries from
// the stored matrices and diameters.
class ImportedUnion {
public:
  static ImportedUnion from_json(const std::string& text);
  int64_t dist(int64_t m, uint32_t a, int64_t n, uint32_t b) const;
  bool has_matrix(int64_t index) const;
  const std::vector<CoarseUnion::Component>& components() const { return components_; }

private:
  std::vector<CoarseUnion::Component> components_;
  std::map<int64_t, std::vector<std::vector<int64_t>>> matrices_;
};

}  // namespace cwb
