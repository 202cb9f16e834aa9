#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cwb/family.hpp"
#include "cwb/groups.hpp"

namespace cwb {

// The words of length <= radius that evaluate to the identity, in canonical
// order: the finite coordinate of a marked group in the Cayley topology.
struct BallKernel {
  int arity = 0;
  int radius = 0;
  std::vector<Word> members;

  bool operator==(const BallKernel& o) const;
  std::string to_json() const;  // {arity, radius, members:[...]} — bit-stable
};

// true iff the word evaluates to the identity.
bool elm(const MarkedGroup& g, const Word& w);

// Number of distinct elements hit by a set of words.
uint64_t vol(const MarkedGroup& g, const std::vector<Word>& z);

BallKernel ball_kernel(const MarkedGroup& g, int radius, uint64_t word_cap = 4'000'000);

struct AgreementReport {
  int radius = 0;                    // largest R <= rmax with equal kernels
  std::optional<Word> witness;       // shortest disagreeing word, if radius < rmax
  int witness_side = 0;              // 1 or 2: which group's kernel contains it
  std::vector<uint64_t> kernel_sizes_g1;  // per radius 0..examined
  std::vector<uint64_t> kernel_sizes_g2;
};

// Largest R <= rmax on which the two groups' kernels coincide, plus the first
// disagreeing word. Symmetric in the two groups.
AgreementReport agreement_radius(const MarkedGroup& g1, const MarkedGroup& g2, int rmax,
                                 uint64_t word_cap = 4'000'000);

struct ConvergenceRow {
  int64_t member_value = 0;   // the family's variable parameter
  std::string member_spec;
  int radius = 0;
  bool threshold_met = false;  // the sufficient condition for this r
  bool agrees = false;         // radius >= r
  std::optional<Word> witness;
};

// Certify a family against a candidate limit group at radius r, flagging the
// sufficient threshold (m >= 2r+3, and k_m > 2^r when the limit is over Z).
std::vector<ConvergenceRow> converge_certify(const FamilySpec& family, const GroupSpec& limit,
                                             int r, uint64_t word_cap = 4'000'000);

}  // namespace cwb
