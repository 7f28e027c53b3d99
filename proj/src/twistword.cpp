#include "dehn/twistword.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "dehn/errors.hpp"

namespace dehn {

TwistWord TwistWord::slice(std::size_t pos, std::size_t len) const {
  pos = std::min(pos, gens_.size());
  len = std::min(len, gens_.size() - pos);
  return TwistWord({gens_.begin() + pos, gens_.begin() + pos + len});
}

TwistWord TwistWord::replaced(std::size_t pos, std::size_t len,
                              const TwistWord& with) const {
  std::vector<TwistGen> out;
  out.reserve(gens_.size() - len + with.size());
  out.insert(out.end(), gens_.begin(), gens_.begin() + pos);
  out.insert(out.end(), with.gens_.begin(), with.gens_.end());
  out.insert(out.end(), gens_.begin() + pos + len, gens_.end());
  return TwistWord(std::move(out));
}

std::size_t TwistWord::find(const TwistWord& pattern, std::size_t from) const {
  if (pattern.size() > gens_.size()) return npos;
  auto it = std::search(gens_.begin() + std::min(from, gens_.size()),
                        gens_.end(), pattern.gens_.begin(),
                        pattern.gens_.end());
  return it == gens_.end() && !pattern.empty()
             ? npos
             : static_cast<std::size_t>(it - gens_.begin());
}

bool TwistWord::positive() const {
  return std::all_of(gens_.begin(), gens_.end(),
                     [](const TwistGen& g) { return g.sign > 0; });
}

std::string TwistWord::str() const {
  if (gens_.empty()) return "1";
  std::string out;
  for (const auto& g : gens_) {
    if (!out.empty()) out += ' ';
    out += g.curve;
    if (g.sign < 0) out += '~';
  }
  return out;
}

TwistWord operator*(const TwistWord& lhs, const TwistWord& rhs) {
  std::vector<TwistGen> out = lhs.gens_;
  out.insert(out.end(), rhs.gens_.begin(), rhs.gens_.end());
  return TwistWord(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const TwistWord& w) {
  return os << w.str();
}

TwistWord reduce(const TwistWord& w) {
  std::vector<TwistGen> stack;
  stack.reserve(w.size());
  for (const auto& g : w) {
    if (!stack.empty() && stack.back().cancels(g))
      stack.pop_back();
    else
      stack.push_back(g);
  }
  return TwistWord(std::move(stack));
}

TwistWord invert(const TwistWord& w) {
  std::vector<TwistGen> out;
  out.reserve(w.size());
  for (auto it = w.gens().rbegin(); it != w.gens().rend(); ++it)
    out.push_back(it->inverse());
  return TwistWord(std::move(out));
}

TwistWord conjugate(const TwistWord& w, const TwistWord& g) {
  return reduce(g * w * invert(g));
}

TwistWord power(const TwistWord& w, unsigned n) {
  TwistWord out;
  for (unsigned i = 0; i < n; ++i) out = out * w;
  return reduce(out);
}

bool is_label(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

namespace {

// Recursive-descent parser over a single line of word text.
class WordParser {
 public:
  WordParser(std::string_view text, std::size_t line, std::size_t column)
      : text_(text), line_(line), column_(column) {}

  TwistWord parse() {
    auto gens = sequence(0);
    skip_space();
    if (pos_ < text_.size()) fail("unexpected character '" +
                                  std::string(1, text_[pos_]) + "'");
    return TwistWord(std::move(gens));
  }

 private:
  std::vector<TwistGen> sequence(int depth) {
    std::vector<TwistGen> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c == ')') {
        if (depth == 0) fail("unmatched ')'");
        break;
      }
      std::vector<TwistGen> item;
      if (c == '(') {
        ++pos_;
        item = sequence(depth + 1);
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
        ++pos_;
      } else if (c == '1' && (pos_ + 1 == text_.size() ||
                              !std::isalnum(static_cast<unsigned char>(
                                  text_[pos_ + 1])))) {
        ++pos_;  // explicit identity
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
          ++pos_;
        TwistGen g{std::string(text_.substr(start, pos_ - start)), 1};
        if (pos_ < text_.size() && text_[pos_] == '~') {
          g.sign = -1;
          ++pos_;
        }
        item.push_back(std::move(g));
      } else {
        fail("unexpected character '" + std::string(1, c) + "'");
      }
      unsigned n = exponent();
      for (unsigned i = 0; i < n; ++i)
        out.insert(out.end(), item.begin(), item.end());
    }
    return out;
  }

  unsigned exponent() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '^') return 1;
    ++pos_;
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected a non-negative exponent after '^'");
    auto digits = text_.substr(start, pos_ - start);
    if (digits.size() > 6) fail("exponent too large");
    return static_cast<unsigned>(std::stoul(std::string(digits)));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, column_ + pos_);
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

}  // namespace

TwistWord parse_word(std::string_view text, std::size_t line,
                     std::size_t column) {
  return WordParser(text, line, column).parse();
}

}  // namespace dehn
