#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dehn {

/// A right-handed (sign +1) or left-handed (sign -1) Dehn twist along a
/// named curve.
struct TwistGen {
  std::string curve;
  int sign = 1;

  TwistGen inverse() const { return {curve, -sign}; }
  bool cancels(const TwistGen& next) const {
    return curve == next.curve && sign == -next.sign;
  }

  friend bool operator==(const TwistGen&, const TwistGen&) = default;
  friend auto operator<=>(const TwistGen&, const TwistGen&) = default;
};

/// A finite product of twist generators, stored left to right exactly as
/// written. Composition is right to left: in `b a` the twist `a` acts first.
/// Words are values; no operation modifies its argument.
class TwistWord {
 public:
  TwistWord() = default;
  explicit TwistWord(std::vector<TwistGen> gens) : gens_(std::move(gens)) {}

  const std::vector<TwistGen>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  const TwistGen& operator[](std::size_t i) const { return gens_[i]; }
  auto begin() const { return gens_.begin(); }
  auto end() const { return gens_.end(); }

  /// Subword [pos, pos + len).
  TwistWord slice(std::size_t pos, std::size_t len) const;
  /// Copy with [pos, pos + len) replaced by `with`.
  TwistWord replaced(std::size_t pos, std::size_t len,
                     const TwistWord& with) const;
  /// First index >= from where `pattern` occurs as a contiguous subword.
  std::size_t find(const TwistWord& pattern, std::size_t from = 0) const;

  /// True if every generator has sign +1.
  bool positive() const;

  std::string str() const;

  friend TwistWord operator*(const TwistWord& lhs, const TwistWord& rhs);
  friend bool operator==(const TwistWord&, const TwistWord&) = default;
  friend auto operator<=>(const TwistWord&, const TwistWord&) = default;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<TwistGen> gens_;
};

std::ostream& operator<<(std::ostream& os, const TwistWord& w);

/// Free reduction: removes adjacent cancelling pairs until none remain.
TwistWord reduce(const TwistWord& w);
/// Reversed word with every sign flipped.
TwistWord invert(const TwistWord& w);
/// reduce(g * w * invert(g)).
TwistWord conjugate(const TwistWord& w, const TwistWord& g);
/// reduce of the n-fold concatenation of w.
TwistWord power(const TwistWord& w, unsigned n);

/// Parses the word syntax: whitespace-separated labels, `~` suffix for an
/// inverse, `( ... )^n` groups (also `label^n`), and `1` for the empty word.
/// Line/column offsets let callers report positions inside larger files.
TwistWord parse_word(std::string_view text, std::size_t line = 0,
                     std::size_t column = 1);

bool is_label(std::string_view s);

}  // namespace dehn
