#pragma once

#include <string>
#include <vector>

#include "cwb/groups.hpp"

namespace cwb {

// A one-parameter family of group specs: a template whose variable parameter
// (m, n or p) runs over a range `a..b[:step]` or an explicit list, with an
// optional per-member k_m substituted for the `{km}` placeholder.
struct FamilySpec {
  std::string base;                // e.g. "sym", "cycle", "psl2", "sl,ring=zmod{km},gens=st"
  std::vector<int64_t> values;     // the variable parameter per member
  std::vector<int64_t> km;         // empty, or one k_m per member
  bool varies_km = false;          // k_m sweeps while the main parameter stays fixed

  size_t size() const { return values.size(); }
  std::string member_text(size_t i) const;
  GroupSpec member(size_t i) const { return GroupSpec::parse(member_text(i)); }
  // the parameter that actually varies; components of a union are indexed by it
  int64_t member_index(size_t i) const { return varies_km ? km.at(i) : values.at(i); }

  // base text + range/list flags; range syntax `a..b[:step]`.
  static FamilySpec parse(const std::string& base, const std::string& range,
                          const std::string& km_list = "", const std::string& primes = "");
};

std::vector<int64_t> parse_range(const std::string& text);
std::vector<int64_t> parse_int_list(const std::string& text);

}  // namespace cwb
