#pragma once

// Alphabets and finite words. Symbols are small integer ids into an
// alphabet table; words compare lexicographically by id sequence.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oshift {

// Raised for malformed user input (files, expressions, words). The CLI
// maps it to exit code 2, the C API to OSHIFT_ERROR_INPUT.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& display(int sym) const { return symbols_.at(sym); }
  std::optional<int> find(const std::string& token) const;

  // True when some symbol is a proper prefix of another; words must then
  // be written with '.' separators to stay unambiguous.
  bool needs_separator() const { return needs_separator_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, int> index_;
  bool needs_separator_ = false;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> syms) : syms_(std::move(syms)) {}

  int size() const { return static_cast<int>(syms_.size()); }
  bool empty() const { return syms_.empty(); }
  int operator[](int i) const { return syms_[i]; }
  int front() const { return syms_.front(); }
  int back() const { return syms_.back(); }

  Word prefix(int n) const {
    return Word(std::vector<int>(syms_.begin(), syms_.begin() + n));
  }
  Word suffix_from(int n) const {
    return Word(std::vector<int>(syms_.begin() + n, syms_.end()));
  }
  // Drops the last symbol.
  Word pop_back() const {
    return Word(std::vector<int>(syms_.begin(), syms_.end() - 1));
  }

  bool is_prefix_of(const Word& w) const {
    if (size() > w.size()) return false;
    for (int i = 0; i < size(); ++i)
      if (syms_[i] != w.syms_[i]) return false;
    return true;
  }

  Word append(int sym) const {
    std::vector<int> s = syms_;
    s.push_back(sym);
    return Word(std::move(s));
  }
  friend Word operator+(const Word& a, const Word& b) {
    std::vector<int> s = a.syms_;
    s.insert(s.end(), b.syms_.begin(), b.syms_.end());
    return Word(std::move(s));
  }

  const std::vector<int>& symbols() const { return syms_; }

  friend auto operator<=>(const Word& a, const Word& b) = default;

 private:
  std::vector<int> syms_;
};

// Renders a word using the alphabet's display tokens; the empty word
// prints as "eps".
std::string word_str(const Alphabet& a, const Word& w);

// Parses a word from text: '.'-separated tokens, or greedy longest-match
// when the alphabet is prefix-free. "eps" and "" denote the empty word.
Word parse_word(const Alphabet& a, const std::string& text);

}  // namespace oshift
