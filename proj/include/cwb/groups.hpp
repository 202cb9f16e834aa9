#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cwb/element.hpp"
#include "cwb/words.hpp"

namespace cwb {

enum class Family : uint8_t {
  sym,             // symmetric group on Z/mZ, generators (sigma, tau)
  cycle,           // cyclic group Z/nZ, one generator
  psl2,            // PSL(2,p), generators (s1, s2)
  sl,              // SL(m, ring), m odd, generator sets st / stu / stt' / stt'uu'
  esl,             // SL(4n, ring) with the 24(l+3)-element block generating set
  limit_sym,       // bijections of Z generated by the shift and one transposition
  limit_gl_shift,  // shift-by-Z extension of finite-support SL over the ring
  limit_ut_shift,  // shift-by-Z extension of finite-support unitriangular matrices
};

// Parsed form of the textual group grammar:
//   sym:m=<int> | cycle:n=<int> | psl2:p=<odd prime> |
//   sl:m=<odd int>,ring=<ring>,gens=<st|stu|stt'|stt'uu'> |
//   esl:m=<4n>,ring=<ring>,gens=hadad |
//   limit:sym | limit:gl-shift,ring=<int|zmod<k>>,gens=<stu|st> |
//   limit:ut-shift,ring=<int|zmod<k>>
// with <ring> one of zmod<k>, f2t:<k>.
struct GroupSpec {
  Family family = Family::cycle;
  int64_t m = 0;  // m, n or p depending on the family
  Ring ring = Ring::integers();
  std::string gens;  // generator-set tag for sl/esl
  std::string text;  // normalized spec text

  static GroupSpec parse(const std::string& text);
};

// A marked group: an ordered generator tuple together with an exact evaluator
// for reduced words. Immutable after construction; evaluation is pure.
class MarkedGroup {
public:
  explicit MarkedGroup(const GroupSpec& spec);

  // A group over the same element domain but a custom generator tuple.
  static MarkedGroup with_generators(const GroupSpec& spec, std::vector<Element> gens,
                                     std::vector<Element> gen_invs);

  const GroupSpec& spec() const { return spec_; }
  int arity() const { return int(gens_.size()); }
  const Element& identity() const { return identity_; }
  const Element& generator(int index) const;          // 1-based
  const Element& generator_inverse(int index) const;  // 1-based
  bool finite_family() const { return finite_; }
  std::optional<uint64_t> order_hint() const { return order_hint_; }

  // Right-multiply by the generator (or inverse) named by a signed letter.
  Element apply_letter(const Element& e, Letter v) const;
  Element evaluate(const Word& w) const;
  bool word_is_identity(const Word& w) const { return cwb::is_identity(evaluate(w)); }

  int64_t window_cap() const { return window_cap_; }
  void set_window_cap(int64_t cap) { window_cap_ = cap; }

private:
  GroupSpec spec_;
  Element identity_;
  std::vector<Element> gens_;
  std::vector<Element> gen_invs_;
  std::optional<uint64_t> order_hint_;
  bool finite_ = true;
  int64_t window_cap_ = 64;
};

MarkedGroup make_group(const std::string& spec_text);

// Z/nZ marked with an arbitrary tuple of nonzero residues (the cycle family
// uses {1}; marking with all of 1..n-1 yields the complete graph).
MarkedGroup make_cycle_marked(int64_t n, const std::vector<int64_t>& residues);

struct GeneratorOrder {
  uint64_t value = 0;
  bool at_least = false;  // true when no power up to the cap reached identity
};

// Smallest positive n with generator^n = id, or AtLeast(cap).
GeneratorOrder order_of_generator(const MarkedGroup& g, int index, uint64_t cap);

// The standard generators of E(4, M_n(ring)) embedded into SL(4n, ring),
// built from the l+3 ring generators of M_n(ring); exactly 24(l+3) matrices.
std::vector<Mat> hadad_generators(int64_t n, const Ring& ring);

// |SL(n, Z/kZ)| resp. |SL(n, F2[t]/(t^k))|; nullopt on uint64 overflow.
std::optional<uint64_t> sl_order(int64_t n, const Ring& ring);

}  // namespace cwb
