#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cwb/groups.hpp"

using namespace cwb;

namespace {

Word random_word(std::mt19937_64& rng, int arity, int len) {
  std::uniform_int_distribution<int> d(0, 2 * arity - 1);
  std::vector<Letter> raw;
  for (int i = 0; i < len; ++i) raw.push_back(letter_from_rank(d(rng)));
  return reduce(arity, raw);
}

// BFS closure of the generated subgroup, capped; independent of the graph module.
std::set<std::string> closure(const MarkedGroup& g, size_t cap) {
  std::set<std::string> seen{element_key(g.identity())};
  std::vector<Element> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const Element& e : frontier)
      for (int i = 1; i <= g.arity(); ++i)
        for (int sign : {1, -1}) {
          Element f = g.apply_letter(e, sign * i);
          if (seen.insert(element_key(f)).second) {
            REQUIRE(seen.size() <= cap);
            next.push_back(std::move(f));
          }
        }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

TEST_CASE("ring arithmetic basics") {
  Ring z6 = Ring::zmod(6);
  CHECK(z6.add(4, 5) == 3);
  CHECK(z6.mul(4, 5) == 2);
  CHECK(z6.neg(2) == 4);
  CHECK(z6.normalize(Int(-1)) == 5);

  Ring f4 = Ring::f2tk(4);  // F2[t]/(t^4)
  Int t = f4.t();
  CHECK(f4.add(t, t) == 0);
  CHECK(f4.mul(t, t) == 4);              // t^2 -> bit 2
  CHECK(f4.mul(Int(8), t) == 0);         // t^3 * t = t^4 = 0
  CHECK(f4.mul(f4.add(f4.one(), t), f4.add(f4.one(), t)) == 5);  // (1+t)^2 = 1+t^2
  CHECK(f4.neg(t) == t);
}

TEST_CASE("determinant over assorted rings") {
  Ring z = Ring::integers();
  CHECK(determinant(z, {Int(1), Int(2), Int(3), Int(4)}, 2) == -2);
  CHECK(determinant(z, {Int(2)}, 1) == 2);
  CHECK(determinant(z,
                    {Int(1), Int(2), Int(3), Int(0), Int(1), Int(4), Int(5), Int(6), Int(0)},
                    3) == 1);
  Ring z6 = Ring::zmod(6);
  CHECK(determinant(z6, {Int(1), Int(2), Int(3), Int(4)}, 2) == 4);  // -2 mod 6
  Ring f2 = Ring::f2tk(1);
  CHECK(determinant(f2, {Int(1), Int(1), Int(1), Int(0)}, 2) == 1);
}

TEST_CASE("group spec parsing") {
  CHECK(GroupSpec::parse("sym:m=5").family == Family::sym);
  CHECK(GroupSpec::parse("cycle:n=12").m == 12);
  CHECK(GroupSpec::parse("sl:m=3,ring=zmod2,gens=st").ring == Ring::zmod(2));
  CHECK(GroupSpec::parse("sl:m=3,ring=f2t:2,gens=stt'").gens == "stt'");
  CHECK(GroupSpec::parse("limit:gl-shift,ring=int,gens=stu").family == Family::limit_gl_shift);
  CHECK(GroupSpec::parse("limit:ut-shift,ring=zmod2").family == Family::limit_ut_shift);
  CHECK_THROWS_AS(GroupSpec::parse("sl:m=4,ring=zmod2,gens=st"), Error);   // even m
  CHECK_THROWS_AS(GroupSpec::parse("sl:m=3,ring=zmod2,gens=stt'"), Error); // t' needs f2t
  CHECK_THROWS_AS(GroupSpec::parse("psl2:p=9"), Error);
  CHECK_THROWS_AS(GroupSpec::parse("psl2:p=2"), Error);
  CHECK_THROWS_AS(GroupSpec::parse("sl:m=3,ring=zmod1,gens=st"), Error);
  CHECK_THROWS_AS(GroupSpec::parse("wat:m=3"), Error);
  CHECK_THROWS_AS(GroupSpec::parse("sym:m=5,m=6"), Error);
}

TEST_CASE("sym(5) facts") {
  MarkedGroup g = make_group("sym:m=5");
  CHECK(g.arity() == 2);
  CHECK(g.order_hint() == 120);
  CHECK(closure(g, 200).size() == 120);
  CHECK(order_of_generator(g, 1, 100).value == 5);
  CHECK(order_of_generator(g, 2, 100).value == 2);
}

TEST_CASE("sl(3, zmod2, st) has order 168") {
  MarkedGroup g = make_group("sl:m=3,ring=zmod2,gens=st");
  CHECK(g.order_hint() == 168);
  CHECK(closure(g, 200).size() == 168);
  CHECK(g.word_is_identity(Word::parse(2, "s2.s2")));   // e_{1,2}(1)^2 = id mod 2
  CHECK(g.word_is_identity(Word::parse(2, "s1.s1.s1")));
}

TEST_CASE("sl order formula vs closure") {
  CHECK(sl_order(3, Ring::zmod(3)) == 5616);
  CHECK(closure(make_group("sl:m=3,ring=zmod3,gens=st"), 6000).size() == 5616);
  CHECK(sl_order(3, Ring::zmod(4)) == uint64_t(168) * 256);
  CHECK(closure(make_group("sl:m=3,ring=zmod4,gens=stu"), 50000).size() == uint64_t(168) * 256);
  CHECK(sl_order(2, Ring::f2tk(2)) == 6 * 8);
  CHECK(sl_order(3, Ring::f2tk(2)) == uint64_t(168) * 256);
  CHECK(closure(make_group("sl:m=3,ring=f2t:2,gens=stt'"), 50000).size() == uint64_t(168) * 256);
}

TEST_CASE("psl2 basics") {
  MarkedGroup g = make_group("psl2:p=5");
  CHECK(g.order_hint() == 60);
  CHECK(closure(g, 100).size() == 60);
  // s2 is an involution in PSL(2,p)
  CHECK(order_of_generator(g, 2, 10).value == 2);
  CHECK(order_of_generator(g, 1, 10).value == 5);
  // +-M give the same key
  ProjMat a = proj_canonical(5, {2, 1, 1, 4});
  ProjMat b = proj_canonical(5, {3, 4, 4, 1});
  CHECK(element_key(Element(a)) == element_key(Element(b)));
}

TEST_CASE("limit:sym evaluator") {
  MarkedGroup g = make_group("limit:sym");
  Element e = g.evaluate(Word::parse(2, "s1"));
  const ShiftPerm& sp = std::get<ShiftPerm>(e);
  CHECK(sp.shift == 1);
  CHECK(sp.supp.empty());
  CHECK(g.word_is_identity(Word::parse(2, "s2.s2")));
  CHECK_FALSE(g.word_is_identity(Word::parse(2, "s1.s1")));
  // conjugated transpositions commute when far apart
  Word w = Word::parse(2, "s1.s1.s2.S1.S1.s2");
  Word v = Word::parse(2, "s2.s1.s1.s2.S1.S1");
  CHECK(element_key(g.evaluate(w)) == element_key(g.evaluate(v)));
  CHECK(order_of_generator(g, 1, 50).at_least);
  CHECK(order_of_generator(g, 1, 50).value == 50);
}

TEST_CASE("transposition order in sym(7)") {
  auto o = order_of_generator(make_group("sym:m=7"), 2, 10);
  CHECK_FALSE(o.at_least);
  CHECK(o.value == 2);
}

TEST_CASE("order of upsilon in sl(m, zmod k, stu) is k") {
  for (int64_t m : {3, 5})
    for (int64_t k : {2, 3, 4, 6}) {
      MarkedGroup g = make_group("sl:m=" + std::to_string(m) + ",ring=zmod" + std::to_string(k) +
                                 ",gens=stu");
      auto o = order_of_generator(g, 3, 100);
      CHECK_FALSE(o.at_least);
      CHECK(o.value == uint64_t(k));
    }
}

TEST_CASE("homomorphism property on random word pairs") {
  std::mt19937_64 rng(23);
  std::vector<std::string> specs = {
      "sym:m=6",
      "cycle:n=9",
      "psl2:p=7",
      "sl:m=3,ring=zmod4,gens=stu",
      "sl:m=5,ring=f2t:2,gens=stt'uu'",
      "limit:sym",
      "limit:gl-shift,ring=int,gens=stu",
      "limit:gl-shift,ring=zmod3,gens=st",
      "limit:ut-shift,ring=zmod2",
  };
  for (const auto& s : specs) {
    MarkedGroup g = make_group(s);
    for (int it = 0; it < 200; ++it) {
      Word a = random_word(rng, g.arity(), it % 8);
      Word b = random_word(rng, g.arity(), (it * 5) % 8);
      Element lhs = g.evaluate(concat(a, b));
      Element rhs = mul(g.evaluate(a), g.evaluate(b), g.window_cap());
      CHECK(element_key(lhs) == element_key(rhs));
    }
  }
}

TEST_CASE("shift matrix window and consistency with finite quotients") {
  MarkedGroup g = make_group("limit:gl-shift,ring=int,gens=stu");
  // the evaluator realizes commutators of elementary matrices exactly
  // [e_{0,1}(1), e_{1,2}(1)] = e_{0,2}(1), with e_{1,2}(1) = s1 s2 s1^{-1}
  Word w = Word::parse(3, "s2.s1.s2.S1.S2.s1.S2.S1");
  Element e = g.evaluate(w);
  const ShiftMat& sm = std::get<ShiftMat>(e);
  CHECK(sm.shift == 0);
  CHECK(sm.lo == 0);
  CHECK(sm.hi == 2);
  for (int64_t i = 0; i <= 2; ++i)
    for (int64_t j = 0; j <= 2; ++j)
      CHECK(sm.at(i, j) == ((i == j) ? 1 : (i == 0 && j == 2) ? 1 : 0));

  // direct multiplication oracle for a short word with a non-elementary value
  Element f = g.evaluate(Word::parse(3, "s2.s3.S2.S3"));
  const ShiftMat& fm = std::get<ShiftMat>(f);
  CHECK(fm.shift == 0);
  CHECK(fm.lo == 0);
  CHECK(fm.hi == 1);
  CHECK(fm.at(0, 0) == 3);
  CHECK(fm.at(0, 1) == -1);
  CHECK(fm.at(1, 0) == 1);
  CHECK(fm.at(1, 1) == 0);

  // window entries reduced mod k match the finite group, restricted to the window
  std::mt19937_64 rng(31);
  for (int64_t k : {2, 5}) {
    Ring zk = Ring::zmod(uint64_t(k));
    MarkedGroup fin = make_group("sl:m=19,ring=zmod" + std::to_string(k) + ",gens=stu");
    for (int it = 0; it < 40; ++it) {
      Word w8 = random_word(rng, 3, 8);
      Element lim_el = g.evaluate(w8);
      Element fq_el = fin.evaluate(w8);
      const ShiftMat& lim = std::get<ShiftMat>(lim_el);
      const Mat& fq = std::get<Mat>(fq_el);
      int64_t m = 19;
      for (int64_t i = -9; i <= 9; ++i)
        for (int64_t j = -9; j <= 9; ++j) {
          Int want = zk.normalize(lim.at(i, j));
          int64_t row = ((i % m) + m) % m;
          int64_t col = (((j + lim.shift) % m) + m) % m;
          CHECK(fq.a[size_t(row) * 19 + col] == want);
        }
    }
  }
}

TEST_CASE("shift additivity and window cap") {
  MarkedGroup g = make_group("limit:gl-shift,ring=int,gens=stu");
  std::mt19937_64 rng(37);
  for (int it = 0; it < 100; ++it) {
    Word a = random_word(rng, 3, it % 10), b = random_word(rng, 3, (it * 3) % 10);
    auto shift_of = [&](const Word& w) { return std::get<ShiftMat>(g.evaluate(w)).shift; };
    CHECK(shift_of(concat(a, b)) == shift_of(a) + shift_of(b));
  }
  MarkedGroup tight(GroupSpec::parse("limit:gl-shift,ring=int,gens=stu"));
  tight.set_window_cap(2);
  std::vector<Letter> far;
  for (int i = 0; i < 8; ++i) far.push_back(1);
  far.push_back(2);
  for (int i = 0; i < 8; ++i) far.push_back(-1);
  far.push_back(2);
  CHECK_THROWS_AS(tight.evaluate(reduce(3, far)), Error);
}

TEST_CASE("ut-shift windows stay unitriangular") {
  MarkedGroup g = make_group("limit:ut-shift,ring=zmod3");
  std::mt19937_64 rng(41);
  for (int it = 0; it < 100; ++it) {
    Element e = g.evaluate(random_word(rng, 2, it % 12));
    const ShiftMat& sm = std::get<ShiftMat>(e);
    for (int64_t i = sm.lo; i <= sm.hi; ++i) {
      CHECK(sm.at(i, i) == 1);
      for (int64_t j = sm.lo; j < i; ++j) CHECK(sm.at(i, j) == 0);
    }
  }
}

TEST_CASE("element keys are canonical") {
  // identity permutation on 3 points: tag 'P', count 3, images 0,1,2 (u32 LE)
  Perm id3{{0, 1, 2}};
  std::string key = element_key(Element(id3));
  std::string expect = std::string("P") + std::string{3, 0, 0, 0} + std::string{0, 0, 0, 0} +
                       std::string{1, 0, 0, 0} + std::string{2, 0, 0, 0};
  CHECK(key == expect);

  // a removable border collapses to the trimmed form
  Ring z = Ring::integers();
  ShiftMat wide;
  wide.ring = z;
  wide.shift = 0;
  wide.lo = -1;
  wide.hi = 1;
  wide.block = {Int(1), Int(0), Int(0), Int(0), Int(1), Int(7), Int(0), Int(0), Int(1)};
  ShiftMat trimmed = shift_mat_trim(wide);
  CHECK(trimmed.lo == 0);
  CHECK(trimmed.hi == 1);
  ShiftMat direct;
  direct.ring = z;
  direct.shift = 0;
  direct.lo = 0;
  direct.hi = 1;
  direct.block = {Int(1), Int(7), Int(0), Int(1)};
  CHECK(element_key(Element(trimmed)) == element_key(Element(direct)));
}

TEST_CASE("hadad generator sets") {
  auto gens2 = hadad_generators(2, Ring::zmod(2));
  CHECK(gens2.size() == 72);
  for (const Mat& g : gens2) {
    CHECK(g.n == 8);
    CHECK(determinant(g.ring, g.a, 8) == 1);
  }
  auto gensf = hadad_generators(2, Ring::f2tk(2));
  CHECK(gensf.size() == 96);
  for (const Mat& g : gensf) CHECK(determinant(g.ring, g.a, 8) == 1);

  // closure sampling over zmod3: random products stay inside SL(8, Z/3)
  MarkedGroup g = make_group("esl:m=8,ring=zmod3,gens=hadad");
  CHECK(g.arity() == 72);
  CHECK(g.order_hint() == sl_order(8, Ring::zmod(3)));
  std::mt19937_64 rng(43);
  for (int it = 0; it < 25; ++it) {
    Word w = random_word(rng, 72, 6);
    Element el = g.evaluate(w);
    const Mat& e = std::get<Mat>(el);
    CHECK(determinant(e.ring, e.a, 8) == 1);
  }
}

TEST_CASE("contractivity of evaluation") {
  // word length in the group is at most the free length, via closure levels
  MarkedGroup g = make_group("sym:m=4");
  std::map<std::string, int> level{{element_key(g.identity()), 0}};
  std::vector<Element> frontier{g.identity()};
  int depth = 0;
  while (!frontier.empty()) {
    ++depth;
    std::vector<Element> next;
    for (const Element& e : frontier)
      for (int i = 1; i <= g.arity(); ++i)
        for (int sign : {1, -1}) {
          Element f = g.apply_letter(e, sign * i);
          if (level.emplace(element_key(f), depth).second) next.push_back(std::move(f));
        }
    frontier = std::move(next);
  }
  std::mt19937_64 rng(47);
  for (int it = 0; it < 200; ++it) {
    Word w = random_word(rng, 2, it % 12);
    CHECK(level.at(element_key(g.evaluate(w))) <= int(w.length()));
  }
}
