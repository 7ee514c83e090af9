#include "word.hpp"

#include <algorithm>

namespace oshift {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw input_error("alphabet must not be empty");
  for (int i = 0; i < static_cast<int>(symbols_.size()); ++i) {
    const std::string& s = symbols_[i];
    if (s.empty()) throw input_error("alphabet symbol must not be empty");
    if (s == "eps" || s.find('.') != std::string::npos)
      throw input_error("alphabet symbol '" + s + "' is reserved");
    if (!index_.emplace(s, i).second)
      throw input_error("duplicate alphabet symbol '" + s + "'");
  }
  for (const auto& a : symbols_)
    for (const auto& b : symbols_)
      if (a != b && a.size() < b.size() && b.compare(0, a.size(), a) == 0)
        needs_separator_ = true;
}

std::optional<int> Alphabet::find(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string word_str(const Alphabet& a, const Word& w) {
  if (w.empty()) return "eps";
  std::string out;
  for (int i = 0; i < w.size(); ++i) {
    if (i > 0 && a.needs_separator()) out += '.';
    out += a.display(w[i]);
  }
  return out;
}

Word parse_word(const Alphabet& a, const std::string& text) {
  if (text.empty() || text == "eps") return Word();
  std::vector<int> syms;
  if (text.find('.') != std::string::npos) {
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t dot = text.find('.', pos);
      std::string tok = text.substr(pos, dot == std::string::npos ? dot : dot - pos);
      auto s = a.find(tok);
      if (!s) throw input_error("unknown symbol '" + tok + "' in word '" + text + "'");
      syms.push_back(*s);
      if (dot == std::string::npos) break;
      pos = dot + 1;
    }
    return Word(std::move(syms));
  }
  if (a.needs_separator())
    throw input_error("alphabet is not prefix-free; write word '" + text +
                      "' with '.' separators");
  // Greedy longest match is unique for prefix-free alphabets.
  size_t pos = 0;
  while (pos < text.size()) {
    int best = -1;
    size_t best_len = 0;
    for (int s = 0; s < a.size(); ++s) {
      const std::string& tok = a.display(s);
      if (tok.size() > best_len && text.compare(pos, tok.size(), tok) == 0) {
        best = s;
        best_len = tok.size();
      }
    }
    if (best < 0)
      throw input_error("cannot read a symbol at '" + text.substr(pos) +
                        "' in word '" + text + "'");
    syms.push_back(best);
    pos += best_len;
  }
  return Word(std::move(syms));
}

}  // namespace oshift
