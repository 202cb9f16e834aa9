#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cwb/groups.hpp"

namespace cwb {

// The R-ball of a group around the identity, materialized by BFS on elements.
// Works for the limit families too, whose balls are finite.
struct GroupBall {
  int radius = 0;
  std::vector<Element> elems;  // BFS discovery order
  std::vector<std::string> keys;
  std::vector<int> level;
  std::unordered_map<std::string, uint32_t> index;

  uint64_t count_within(int r) const;
};

GroupBall group_ball(const MarkedGroup& g, int radius, uint64_t cap = 1'000'000);

// nbhd_1(Y) \ Y via left multiplication by S u S^-1. Y is given by element
// keys and must lie inside the context ball.
std::set<std::string> boundary(const MarkedGroup& g, const GroupBall& ctx,
                               const std::set<std::string>& y_keys);

struct FolnerEntry {
  int radius = 0;
  uint64_t num = 0, den = 1;  // |boundary(witness)| / |witness|, always exact for the witness
  bool exact = false;         // true when this is the true minimum over the R-ball
  std::vector<std::string> witness;  // element keys, sorted

  double value() const { return den ? double(num) / double(den) : 0.0; }
};

struct FolnerOptions {
  uint64_t exact_threshold = 22;  // max ball size for exhaustive minimization
  uint64_t ball_cap = 1'000'000;
};

enum class RelMode { exact, heuristic, automatic };

// min |d1(Y)|/|Y| over nonempty subsets of the R-ball: exhaustive with the
// canonical tie-break in exact mode, sub-balls plus greedy descent otherwise
// (an upper bound on the true value).
FolnerEntry rel(const MarkedGroup& g, int radius, RelMode mode, const FolnerOptions& opt = {});

struct FolnerProfile {
  std::vector<FolnerEntry> entries;  // radius 1..rmax
  std::string to_csv() const;        // R,value_num,value_den,exact,witness_size
};

FolnerProfile rel_profile(const MarkedGroup& g, int rmax, const FolnerOptions& opt = {});

}  // namespace cwb
