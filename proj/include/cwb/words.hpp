#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cwb/error.hpp"

namespace cwb {

// A letter of the free group F_k: +i stands for the generator a_i,
// -i for its inverse (1-based, |i| <= k).
using Letter = int32_t;

// Canonical letter order: +1 < -1 < +2 < -2 < ...
inline int letter_rank(Letter v) { return 2 * (std::abs(v) - 1) + (v < 0 ? 1 : 0); }
inline Letter letter_from_rank(int r) { return (r % 2 == 0) ? (r / 2 + 1) : -(r / 2 + 1); }

// A fully reduced word in F_k. The empty word is the identity.
// Words carry their arity; operations on words of different arity fail.
class Word {
public:
  Word() : arity_(1) {}
  explicit Word(int arity) : arity_(arity) {}
  Word(int arity, std::vector<Letter> reduced_letters)
      : arity_(arity), letters_(std::move(reduced_letters)) {}

  int arity() const { return arity_; }
  const std::vector<Letter>& letters() const { return letters_; }
  size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  bool operator==(const Word& o) const = default;

  // (length, lex with letter_rank) — the canonical ball order.
  bool canonical_less(const Word& o) const;

  // `e` for the empty word, otherwise `.`-joined letters: s2 = a_2, S2 = a_2^{-1}.
  std::string text() const;
  static Word parse(int arity, const std::string& text);

private:
  int arity_;
  std::vector<Letter> letters_;
};

// Free reduction of a raw letter sequence. Idempotent.
Word reduce(int arity, const std::vector<Letter>& raw);

// Reduced concatenation; arities must match.
Word concat(const Word& a, const Word& b);

// Formal inverse (reverse + negate); involutive.
Word invert(const Word& w);

// Number of reduced words of length <= radius: 1 + sum 2k(2k-1)^{r-1}.
// Saturates at UINT64_MAX.
uint64_t ball_count(int arity, int radius);

// All reduced words of length <= radius in canonical order (deterministic).
// Throws cap_exceeded if the ball would contain more than `cap` words.
std::vector<Word> enumerate_ball(int arity, int radius, uint64_t cap = 4'000'000);

}  // namespace cwb
