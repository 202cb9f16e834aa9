#include "cwb/topology.hpp"

#include <nlohmann/json.hpp>
#include <set>

namespace cwb {

using ordered_json = nlohmann::ordered_json;

bool BallKernel::operator==(const BallKernel& o) const {
  return arity == o.arity && radius == o.radius && members == o.members;
}

std::string BallKernel::to_json() const {
  ordered_json j;
  j["arity"] = arity;
  j["radius"] = radius;
  auto arr = ordered_json::array();
  for (const Word& w : members) arr.push_back(w.text());
  j["members"] = std::move(arr);
  return j.dump();
}

bool elm(const MarkedGroup& g, const Word& w) { return g.word_is_identity(w); }

uint64_t vol(const MarkedGroup& g, const std::vector<Word>& z) {
  if (z.empty()) fail(errc::parse, "vol needs a nonempty word set");
  std::set<std::string> keys;
  for (const Word& w : z) keys.insert(element_key(g.evaluate(w)));
  return keys.size();
}

BallKernel ball_kernel(const MarkedGroup& g, int radius, uint64_t word_cap) {
  if (radius < 0) fail(errc::parse, "radius must be >= 0");
  BallKernel k;
  k.arity = g.arity();
  k.radius = radius;
  for (const Word& w : enumerate_ball(g.arity(), radius, word_cap))
    if (elm(g, w)) k.members.push_back(w);
  return k;
}

AgreementReport agreement_radius(const MarkedGroup& g1, const MarkedGroup& g2, int rmax,
                                 uint64_t word_cap) {
  if (g1.arity() != g2.arity()) fail(errc::arity, "groups must share the arity");
  if (rmax < 0) fail(errc::parse, "rmax must be >= 0");
  AgreementReport rep;
  std::vector<Word> ball = enumerate_ball(g1.arity(), rmax, word_cap);
  uint64_t in1 = 0, in2 = 0;
  size_t len_cut = 0;
  int radius = 0;
  rep.kernel_sizes_g1.push_back(1);  // the empty word, radius 0
  rep.kernel_sizes_g2.push_back(1);
  for (int r = 1; r <= rmax; ++r) {
    bool equal = true;
    std::optional<Word> first_diff;
    int side = 0;
    while (len_cut < ball.size() && ball[len_cut].length() <= size_t(r)) {
      const Word& w = ball[len_cut];
      if (!w.empty()) {
        bool e1 = elm(g1, w), e2 = elm(g2, w);
        in1 += e1;
        in2 += e2;
        if (e1 != e2 && !first_diff) {
          first_diff = w;
          side = e1 ? 1 : 2;
          equal = false;
        } else if (e1 != e2) {
          equal = false;
        }
      }
      ++len_cut;
    }
    rep.kernel_sizes_g1.push_back(in1 + 1);
    rep.kernel_sizes_g2.push_back(in2 + 1);
    if (!equal) {
      rep.witness = first_diff;
      rep.witness_side = side;
      break;
    }
    radius = r;
  }
  rep.radius = radius;
  return rep;
}

namespace {

// The sufficient thresholds are tied to the matched family/limit pairings:
// sym against its limit needs m >= 2r+3; the sl families over Z/kZ against
// the shift limits need m >= 2r+3, plus k > 2^r over the integer limit (so
// entries of short products cannot wrap), or an equal modulus otherwise.
// Unmatched pairings carry no claim.
bool sufficient_threshold(const GroupSpec& member, const GroupSpec& limit, int r) {
  if (member.m < 2 * int64_t(r) + 3) return false;
  if (member.family == Family::sym) return limit.family == Family::limit_sym;
  if (member.family == Family::sl && member.ring.kind == Ring::Kind::zmod) {
    bool gens_match = (limit.family == Family::limit_gl_shift && member.gens == limit.gens) ||
                      (limit.family == Family::limit_ut_shift && member.gens == "st");
    if (!gens_match) return false;
    if (limit.ring.kind == Ring::Kind::integers) return member.ring.k > (uint64_t(1) << r);
    return limit.ring.kind == Ring::Kind::zmod && member.ring.k == limit.ring.k;
  }
  return false;
}

}  // namespace

std::vector<ConvergenceRow> converge_certify(const FamilySpec& family, const GroupSpec& limit,
                                             int r, uint64_t word_cap) {
  if (r < 0) fail(errc::parse, "radius must be >= 0");
  MarkedGroup lim(limit);
  std::vector<ConvergenceRow> rows;
  for (size_t i = 0; i < family.size(); ++i) {
    GroupSpec ms = family.member(i);
    MarkedGroup g(ms);
    if (g.arity() != lim.arity())
      fail(errc::arity, "family member " + ms.text + " does not share the limit's arity");
    ConvergenceRow row;
    row.member_value = ms.m;
    row.member_spec = ms.text;
    AgreementReport rep = agreement_radius(g, lim, r, word_cap);
    row.radius = rep.radius;
    row.witness = rep.witness;
    row.agrees = rep.radius >= r;
    row.threshold_met = sufficient_threshold(ms, limit, r);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cwb
