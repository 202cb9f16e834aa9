#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "cwb/groups.hpp"

namespace cwb {

struct BfsMetrics {
  int64_t eccentricity = 0;             // of the identity = diameter (vertex-transitivity)
  std::vector<uint64_t> sphere_sizes;   // per radius, starting at radius 0
};

// Explicit Cayley graph of a finite marked group: vertices in BFS discovery
// order from the identity (left multiplication by S u S^-1, generators in
// canonical letter order), simple undirected adjacency in CSR form.
struct CayleyGraph {
  std::string spec_text;
  int arity = 0;
  int degree = 0;  // max over vertices
  std::vector<uint32_t> offsets;
  std::vector<uint32_t> neighbors;    // sorted within each vertex
  std::vector<uint32_t> edge_labels;  // bitmask of 1-based generator indices, per CSR slot
  std::vector<std::string> keys;      // vertex -> canonical element key
  std::unordered_map<std::string, uint32_t> index;
  std::vector<uint32_t> level;        // BFS distance from the identity
  std::vector<Element> elems;         // filled only when requested at build time

  uint64_t vertex_count() const { return keys.size(); }
  uint64_t edge_count() const { return neighbors.size() / 2; }
  BfsMetrics metrics() const;
};

// BFS closure from the identity; cap_exceeded when the group is too large.
CayleyGraph build_graph(const MarkedGroup& g, uint64_t vertex_cap = 2'000'000,
                        bool keep_elements = false);

// Max BFS distance from the identity (= the diameter, by vertex-transitivity).
int64_t diameter(const CayleyGraph& g);

// Exhaustive all-pairs check, for validation on small graphs only (<= 1000 vertices).
int64_t diameter_all_pairs(const CayleyGraph& g);

// Distances from an arbitrary start vertex over the explicit adjacency.
std::vector<uint32_t> bfs_distances(const CayleyGraph& g, uint32_t start);

// BFS distance from the identity to a target element; not_found if absent.
int64_t word_length(const CayleyGraph& g, const Element& target);

enum class ExportFormat { edges, dot, json };
ExportFormat parse_export_format(const std::string& name);
std::string export_graph(const CayleyGraph& g, ExportFormat format);

struct ElementaryLengthRow {
  uint32_t i = 0, j = 0;  // 0-based entry position
  std::string value;      // ring element text (1, -1, t, ...)
  int64_t length = 0;     // word length over (sigma, tau)
};

struct ElementaryLengthTable {
  std::vector<ElementaryLengthRow> rows;
  int64_t max_length = 0;
};

// Word lengths of the standard elementary generators of SL(m, ring) over the
// two-generator marking (sigma, tau).
ElementaryLengthTable elementary_lengths(int64_t m, const Ring& ring,
                                         uint64_t vertex_cap = 2'000'000);

// ---- implicit breadth-first search over bit-packed matrix states ----

struct DenseBfsRequest {
  GroupSpec spec;            // an sl-family spec
  std::vector<Mat> targets;  // optional elements to locate
  uint64_t memory_budget = 6ull << 30;  // bytes for the three bitmaps
  int threads = 1;
};

struct DenseBfsResult {
  int64_t diameter = 0;
  uint64_t order = 0;  // states reached (the order of the generated subgroup)
  std::vector<uint64_t> sphere_sizes;
  std::vector<int64_t> target_levels;  // -1 when never reached
};

// True when the full state space k^(m^2) fits the bitmap budget.
bool dense_bfs_feasible(const GroupSpec& spec, uint64_t memory_budget);
DenseBfsResult dense_bfs(const DenseBfsRequest& req);

struct DiameterResult {
  int64_t diameter = 0;
  uint64_t order = 0;
  std::string method;  // "explicit" or "dense"
};

// Strategy dispatch: explicit graph when the order fits the vertex cap,
// otherwise the packed-bitmap search when the state space fits the budget.
DiameterResult diameter_of(const GroupSpec& spec, uint64_t vertex_cap = 2'000'000,
                           uint64_t memory_budget = 6ull << 30, int threads = 1);

}  // namespace cwb
