#include "cwb/words.hpp"

#include <algorithm>
#include <charconv>

namespace cwb {

namespace {

void check_letter(int arity, Letter v) {
  if (v == 0 || std::abs(v) > arity)
    fail(errc::arity, "letter " + std::to_string(v) + " out of range for arity " +
                          std::to_string(arity));
}

}  // namespace

bool Word::canonical_less(const Word& o) const {
  if (letters_.size() != o.letters_.size()) return letters_.size() < o.letters_.size();
  for (size_t i = 0; i < letters_.size(); ++i) {
    int ra = letter_rank(letters_[i]), rb = letter_rank(o.letters_[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

std::string Word::text() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += '.';
    Letter v = letters_[i];
    out += (v > 0 ? 's' : 'S');
    out += std::to_string(std::abs(v));
  }
  return out;
}

Word Word::parse(int arity, const std::string& text) {
  if (arity < 1) fail(errc::parse, "arity must be positive");
  if (text == "e") return Word(arity);
  std::vector<Letter> raw;
  size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos];
    int sign = (c == 's') ? 1 : (c == 'S') ? -1 : 0;
    if (sign == 0) fail(errc::parse, "expected s<i> or S<i> at position " + std::to_string(pos));
    ++pos;
    int idx = 0;
    auto [p, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), idx);
    if (ec != std::errc() || idx < 1)
      fail(errc::parse, "bad generator index at position " + std::to_string(pos));
    pos = p - text.data();
    check_letter(arity, sign * idx);
    raw.push_back(sign * idx);
    if (pos < text.size()) {
      if (text[pos] != '.') fail(errc::parse, "expected '.' at position " + std::to_string(pos));
      ++pos;
      if (pos == text.size()) fail(errc::parse, "trailing '.'");
    }
  }
  return reduce(arity, raw);
}

Word reduce(int arity, const std::vector<Letter>& raw) {
  if (arity < 1) fail(errc::parse, "arity must be positive");
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter v : raw) {
    check_letter(arity, v);
    if (!out.empty() && out.back() == -v)
      out.pop_back();
    else
      out.push_back(v);
  }
  return Word(arity, std::move(out));
}

Word concat(const Word& a, const Word& b) {
  if (a.arity() != b.arity())
    fail(errc::arity, "arity mismatch: " + std::to_string(a.arity()) + " vs " +
                          std::to_string(b.arity()));
  std::vector<Letter> out = a.letters();
  for (Letter v : b.letters()) {
    if (!out.empty() && out.back() == -v)
      out.pop_back();
    else
      out.push_back(v);
  }
  return Word(a.arity(), std::move(out));
}

Word invert(const Word& w) {
  std::vector<Letter> out(w.letters().rbegin(), w.letters().rend());
  for (Letter& v : out) v = -v;
  return Word(w.arity(), std::move(out));
}

uint64_t ball_count(int arity, int radius) {
  uint64_t total = 1, sphere = 1;
  for (int r = 1; r <= radius; ++r) {
    uint64_t factor = (r == 1) ? uint64_t(2 * arity) : uint64_t(2 * arity - 1);
    if (sphere > UINT64_MAX / factor) return UINT64_MAX;
    sphere *= factor;
    if (total > UINT64_MAX - sphere) return UINT64_MAX;
    total += sphere;
  }
  return total;
}

std::vector<Word> enumerate_ball(int arity, int radius, uint64_t cap) {
  if (arity < 1 || radius < 0) fail(errc::parse, "need arity >= 1, radius >= 0");
  uint64_t n = ball_count(arity, radius);
  if (n > cap)
    fail(errc::cap_exceeded, "ball(" + std::to_string(arity) + "," + std::to_string(radius) +
                                 ") has " + std::to_string(n) + " words, cap is " +
                                 std::to_string(cap));
  std::vector<Word> out;
  out.reserve(n);
  out.emplace_back(arity);
  size_t level_begin = 0, level_end = 1;
  for (int r = 1; r <= radius; ++r) {
    // Extending parents in order by letters in rank order keeps each level
    // sorted lexicographically, hence the whole list canonically ordered.
    for (size_t i = level_begin; i < level_end; ++i) {
      Letter last = out[i].empty() ? 0 : out[i].letters().back();
      for (int rank = 0; rank < 2 * arity; ++rank) {
        Letter v = letter_from_rank(rank);
        if (last != 0 && v == -last) continue;
        std::vector<Letter> ls = out[i].letters();
        ls.push_back(v);
        out.emplace_back(arity, std::move(ls));
      }
    }
    level_begin = level_end;
    level_end = out.size();
  }
  return out;
}

}  // namespace cwb
