#pragma once

// One-sided subshifts with finite presentations (forbidden words, 0-1
// vertex matrices, labeled graphs) and exact answers to language,
// extension and tail-classification queries.
//
// Every point x of a presented subshift carries a finite tail type:
// data sufficient to decide, for every finite word mu, whether mu x is
// again a point. For a subshift of finite type with memory M this is
// the first M symbols of x; for a sofic shift it is the set of graph
// vertices from which x can be read. The realizable tail types are a
// finite list, and everything downstream (atoms, towers, the star
// calculus) quantifies over that list instead of over points.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "word.hpp"

namespace oshift {

class Tower;  // defined in set_algebra.hpp

enum class PresentationKind { ForbiddenWords, VertexShift, LabeledGraph };

// Result of classifying the points that start with a given word: the
// candidate tail type, and whether every continuation is guaranteed to
// realize it. Never a silent guess.
struct TailProbe {
  bool stable = false;
  int tail = -1;             // index into tail type list; valid when stable
  std::string candidate;     // printable current candidate
};

class Subshift {
 public:
  static Subshift from_file(const std::string& path);
  // `name` is used in error messages.
  static Subshift parse(const std::string& text, const std::string& name = "<input>");

  ~Subshift();
  Subshift(Subshift&&) noexcept;
  Subshift& operator=(Subshift&&) noexcept;
  Subshift(const Subshift&) = delete;
  Subshift& operator=(const Subshift&) = delete;

  const Alphabet& alphabet() const;
  PresentationKind kind() const;
  const std::string& name() const;

  // Language queries. level_words(k) is L^k(X) in lexicographic order;
  // words_up_to(l) is L_l(X) ordered by (length, lex).
  bool in_language(const Word& w) const;
  const std::vector<Word>& level_words(int k) const;
  std::vector<Word> words_up_to(int l) const;

  // Tail types, deterministically ordered.
  int tail_count() const;
  std::string tail_name(int tail) const;

  // Tail type of a x for any point x with tail type `tail`; nullopt when
  // a x is never a point.
  std::optional<int> prepend(int sym, int tail) const;
  std::optional<int> prepend(const Word& mu, int tail) const;

  // Tail type shared by every point with prefix w.
  TailProbe tail_of_prefix(const Word& w) const;

  // P_l(tail) = { mu, |mu| <= l : mu x in X for points x of this tail
  // type }, ordered by (length, lex). Always contains eps.
  std::vector<Word> left_extensions(int tail, int l) const;

  // Shared finite-dimensional snapshot machinery (atoms, levels); built
  // lazily, thread-safe.
  const Tower& tower() const;

  // Distinguishes subshifts in mixed computations (conjugacy).
  const void* id() const { return this; }

 private:
  Subshift();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace oshift
