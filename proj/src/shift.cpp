#include "shift.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace oshift {

namespace {

constexpr int kMaxSftWindows = 1 << 20;
constexpr int kMaxMonoidSize = 1 << 17;
constexpr int kMaxGraphVertices = 64;

class TailEngineBase {
 public:
  virtual ~TailEngineBase() = default;
  virtual bool in_language(const Word& w) const = 0;
  virtual int tail_count() const = 0;
  virtual std::string tail_name(int tail) const = 0;
  virtual std::optional<int> prepend(int sym, int tail) const = 0;
  virtual TailProbe probe(const Word& w) const = 0;
};

// ---------------------------------------------------------------------------
// Subshifts of finite type: forbidden words with memory M. The tail type
// of a point is its first M symbols; liveness of windows is computed by
// trimming the de Bruijn transition structure.

class SftEngine : public TailEngineBase {
 public:
  SftEngine(const Alphabet& alphabet, std::vector<Word> forbidden)
      : alphabet_(alphabet), forbidden_(std::move(forbidden)) {
    int max_len = 0;
    for (const Word& f : forbidden_) max_len = std::max(max_len, f.size());
    memory_ = std::max(0, max_len - 1);

    std::vector<Word> frontier{Word()};
    for (int len = 0; len < memory_; ++len) {
      std::vector<Word> next;
      for (const Word& w : frontier)
        for (int a = 0; a < alphabet_.size(); ++a) {
          Word wa = w.append(a);
          if (factor_free(wa)) next.push_back(std::move(wa));
        }
      if (static_cast<int>(next.size()) > kMaxSftWindows)
        throw input_error("too many length-" + std::to_string(len + 1) +
                          " windows; memory " + std::to_string(memory_) +
                          " is out of reach");
      frontier = std::move(next);
    }
    std::sort(frontier.begin(), frontier.end());

    // Trim to windows that start an infinite legal sequence.
    std::set<Word> live(frontier.begin(), frontier.end());
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = live.begin(); it != live.end();) {
        bool has_next = false;
        for (int a = 0; a < alphabet_.size() && !has_next; ++a) {
          Word ua = *it + Word({a});
          if (new_factor_ok(ua) && live.count(window_of(ua))) has_next = true;
        }
        if (!has_next) {
          it = live.erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
    }
    if (live.empty()) throw input_error("subshift is empty (no legal point exists)");
    windows_.assign(live.begin(), live.end());
    for (int i = 0; i < static_cast<int>(windows_.size()); ++i)
      window_index_[windows_[i]] = i;
  }

  int memory() const { return memory_; }

  bool in_language(const Word& w) const override {
    if (!factor_free(w)) return false;
    if (w.size() >= memory_)
      return window_index_.count(w.suffix_from(w.size() - memory_)) > 0;
    for (const Word& u : windows_)
      if (w.is_prefix_of(u)) return true;
    return false;
  }

  int tail_count() const override { return static_cast<int>(windows_.size()); }

  std::string tail_name(int tail) const override {
    return "window '" + word_str(alphabet_, windows_[tail]) + "'";
  }

  std::optional<int> prepend(int sym, int tail) const override {
    Word u = Word({sym}) + windows_[tail];
    if (!factor_free(u)) return std::nullopt;
    auto it = window_index_.find(u.prefix(memory_));
    if (it == window_index_.end()) return std::nullopt;
    return it->second;
  }

  TailProbe probe(const Word& w) const override {
    TailProbe r;
    std::vector<int> compatible;
    if (w.size() >= memory_) {
      auto it = window_index_.find(w.prefix(memory_));
      if (it != window_index_.end()) compatible.push_back(it->second);
    } else {
      for (int i = 0; i < tail_count(); ++i)
        if (w.is_prefix_of(windows_[i])) compatible.push_back(i);
    }
    std::string names;
    for (int i : compatible) {
      if (!names.empty()) names += ", ";
      names += "'" + word_str(alphabet_, windows_[i]) + "'";
    }
    r.candidate = "{" + names + "}";
    if (compatible.size() == 1) {
      r.stable = true;
      r.tail = compatible.front();
    }
    return r;
  }

 private:
  bool factor_free(const Word& w) const {
    for (const Word& f : forbidden_)
      for (int i = 0; i + f.size() <= w.size(); ++i) {
        bool hit = true;
        for (int j = 0; j < f.size(); ++j)
          if (w[i + j] != f[j]) {
            hit = false;
            break;
          }
        if (hit) return false;
      }
    return true;
  }

  // w minus its last symbol is known factor-free; checks factors ending at
  // the last symbol only.
  bool new_factor_ok(const Word& w) const {
    for (const Word& f : forbidden_) {
      if (f.size() > w.size()) continue;
      bool hit = true;
      for (int j = 0; j < f.size(); ++j)
        if (w[w.size() - f.size() + j] != f[j]) {
          hit = false;
          break;
        }
      if (hit) return false;
    }
    return true;
  }

  Word window_of(const Word& w) const { return w.suffix_from(w.size() - memory_); }

  const Alphabet& alphabet_;
  std::vector<Word> forbidden_;
  int memory_ = 0;
  std::vector<Word> windows_;  // live length-M windows, lex sorted
  std::map<Word, int> window_index_;
};

// ---------------------------------------------------------------------------
// Sofic shifts: labeled graphs. The tail type of a point x is the set
// Q(x) of vertices from which x can be read; it is the eventual value of
// the decreasing predecessor sets Pre(x[0..n)). Realizable sets are the
// domains of relation-monoid elements that can ride a domain-preserving
// cycle forever.

using Rel = std::vector<std::uint64_t>;  // rel[q] = mask of targets

class SoficEngine : public TailEngineBase {
 public:
  SoficEngine(const Alphabet& alphabet, std::vector<std::string> vertex_names,
              std::vector<std::vector<std::uint64_t>> adj)
      : alphabet_(alphabet) {
    int n = static_cast<int>(vertex_names.size());
    // Trim vertices that cannot start an infinite path.
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int q = 0; q < n; ++q) {
        if (!alive[q]) continue;
        std::uint64_t out = 0;
        for (int a = 0; a < alphabet_.size(); ++a) out |= adj[a][q];
        for (int t = 0; t < n; ++t)
          if (!alive[t]) out &= ~(std::uint64_t{1} << t);
        if (out == 0) {
          alive[q] = false;
          changed = true;
        }
      }
    }
    std::vector<int> remap(n, -1);
    for (int q = 0; q < n; ++q)
      if (alive[q]) {
        remap[q] = nv_;
        names_.push_back(vertex_names[q]);
        ++nv_;
      }
    if (nv_ == 0) throw input_error("subshift is empty (no legal point exists)");
    adj_.assign(alphabet_.size(), Rel(nv_, 0));
    for (int a = 0; a < alphabet_.size(); ++a)
      for (int q = 0; q < n; ++q) {
        if (!alive[q]) continue;
        for (int t = 0; t < n; ++t)
          if (alive[t] && (adj[a][q] >> t & 1))
            adj_[a][remap[q]] |= std::uint64_t{1} << remap[t];
      }

    build_monoid();
    classify_stable();
  }

  bool in_language(const Word& w) const override { return node_of(w) >= 0; }

  int tail_count() const override { return static_cast<int>(tails_.size()); }

  std::string tail_name(int tail) const override { return set_name(tails_[tail]); }

  std::optional<int> prepend(int sym, int tail) const override {
    std::uint64_t mask = tails_[tail];
    std::uint64_t out = 0;
    for (int q = 0; q < nv_; ++q)
      if (adj_[sym][q] & mask) out |= std::uint64_t{1} << q;
    if (out == 0) return std::nullopt;
    auto it = tail_index_.find(out);
    if (it == tail_index_.end())
      throw std::logic_error("prepend left the realizable tail-type list");
    return it->second;
  }

  TailProbe probe(const Word& w) const override {
    int node = node_of(w);
    if (node < 0) throw input_error("word is not in the language");
    TailProbe r;
    std::uint64_t d = dom(elems_[node]);
    r.candidate = set_name(d);
    // Stable iff no continuation can shrink the predecessor set.
    std::vector<bool> seen(elems_.size(), false);
    std::deque<int> work{node};
    seen[node] = true;
    bool stable = true;
    while (!work.empty() && stable) {
      int u = work.front();
      work.pop_front();
      if (dom(elems_[u]) != d) {
        stable = false;
        break;
      }
      for (int a = 0; a < alphabet_.size(); ++a) {
        int v = step_[u][a];
        if (v >= 0 && !seen[v]) {
          seen[v] = true;
          work.push_back(v);
        }
      }
    }
    if (stable) {
      r.stable = true;
      r.tail = tail_index_.at(d);
    }
    return r;
  }

 private:
  void build_monoid() {
    Rel identity(nv_, 0);
    for (int q = 0; q < nv_; ++q) identity[q] = std::uint64_t{1} << q;
    elems_.push_back(identity);
    index_[identity] = 0;
    for (size_t u = 0; u < elems_.size(); ++u) {
      step_.emplace_back(alphabet_.size(), -1);
      for (int a = 0; a < alphabet_.size(); ++a) {
        Rel next = compose(elems_[u], adj_[a]);
        if (std::all_of(next.begin(), next.end(), [](std::uint64_t m) { return m == 0; }))
          continue;
        auto [it, fresh] = index_.emplace(next, static_cast<int>(elems_.size()));
        if (fresh) {
          elems_.push_back(std::move(next));
          if (static_cast<int>(elems_.size()) > kMaxMonoidSize)
            throw input_error("transition-relation monoid is too large");
        }
        step_[u][a] = it->second;
      }
    }
  }

  void classify_stable() {
    // Group monoid elements by relation domain; within each group trim
    // elements with no in-group successor. Survivors can follow a
    // domain-preserving cycle forever, so their domains are exactly the
    // realizable tail-type sets.
    int n = static_cast<int>(elems_.size());
    std::vector<std::uint64_t> doms(n);
    for (int u = 0; u < n; ++u) doms[u] = dom(elems_[u]);
    std::vector<bool> stable(n, true);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int u = 0; u < n; ++u) {
        if (!stable[u]) continue;
        bool has_next = false;
        for (int a = 0; a < static_cast<int>(step_[u].size()) && !has_next; ++a) {
          int v = step_[u][a];
          if (v >= 0 && stable[v] && doms[v] == doms[u]) has_next = true;
        }
        if (!has_next) {
          stable[u] = false;
          changed = true;
        }
      }
    }
    std::set<std::uint64_t> sets;
    for (int u = 0; u < n; ++u)
      if (stable[u]) sets.insert(doms[u]);
    // A set realizable by riding a cycle is also realizable from any
    // element that reaches the cycle domain-constantly; the survivors
    // already cover those domains.
    tails_.assign(sets.begin(), sets.end());
    for (int i = 0; i < static_cast<int>(tails_.size()); ++i) tail_index_[tails_[i]] = i;
  }

  Rel compose(const Rel& r, const Rel& s) const {
    Rel out(nv_, 0);
    for (int q = 0; q < nv_; ++q) {
      std::uint64_t m = r[q];
      while (m) {
        int t = std::countr_zero(m);
        m &= m - 1;
        out[q] |= s[t];
      }
    }
    return out;
  }

  static std::uint64_t dom(const Rel& r) {
    std::uint64_t d = 0;
    for (size_t q = 0; q < r.size(); ++q)
      if (r[q]) d |= std::uint64_t{1} << q;
    return d;
  }

  int node_of(const Word& w) const {
    int node = 0;
    for (int i = 0; i < w.size(); ++i) {
      node = step_[node][w[i]];
      if (node < 0) return -1;
    }
    return node;
  }

  std::string set_name(std::uint64_t mask) const {
    std::string out = "states {";
    bool first = true;
    for (int q = 0; q < nv_; ++q)
      if (mask >> q & 1) {
        if (!first) out += ",";
        out += names_[q];
        first = false;
      }
    return out + "}";
  }

  const Alphabet& alphabet_;
  int nv_ = 0;
  std::vector<std::string> names_;
  std::vector<Rel> adj_;

  std::vector<Rel> elems_;
  std::map<Rel, int> index_;
  std::vector<std::vector<int>> step_;

  std::vector<std::uint64_t> tails_;  // realizable vertex sets, ascending
  std::map<std::uint64_t, int> tail_index_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Presentation file parser.

struct Subshift::Impl {
  std::string name;
  Alphabet alphabet;
  PresentationKind kind = PresentationKind::ForbiddenWords;
  std::unique_ptr<TailEngineBase> engine;

  mutable std::mutex mu;
  mutable std::deque<std::vector<Word>> lang;  // lang[k] = L^k(X)
  mutable std::shared_ptr<Tower> tower;
};

namespace {

[[noreturn]] void fail(const std::string& file, int line, const std::string& msg) {
  throw input_error(file + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

}  // namespace

Subshift::Subshift() : impl_(std::make_unique<Impl>()) {}
Subshift::~Subshift() = default;
Subshift::Subshift(Subshift&&) noexcept = default;
Subshift& Subshift::operator=(Subshift&&) noexcept = default;

Subshift Subshift::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open shift file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

Subshift Subshift::parse(const std::string& text, const std::string& name) {
  Subshift shift;
  Impl& impl = *shift.impl_;
  impl.name = name;

  std::vector<std::pair<int, std::string>> lines;  // (line number, content)
  {
    std::istringstream ss(text);
    std::string raw;
    int no = 0;
    while (std::getline(ss, raw)) {
      ++no;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      if (tokens_of(raw).empty()) continue;
      lines.emplace_back(no, raw);
    }
  }
  if (lines.empty()) fail(name, 1, "empty shift file");

  size_t pos = 0;
  {
    auto [no, line] = lines[pos];
    auto toks = tokens_of(line);
    if (toks.empty() || toks[0] != "alphabet:")
      fail(name, no, "expected 'alphabet: sym sym ...' as the first directive");
    try {
      impl.alphabet = Alphabet(std::vector<std::string>(toks.begin() + 1, toks.end()));
    } catch (const input_error& e) {
      fail(name, no, e.what());
    }
    ++pos;
  }
  if (pos >= lines.size()) fail(name, lines.back().first, "missing presentation section");

  auto [sec_no, sec_line] = lines[pos];
  auto sec = tokens_of(sec_line);
  const int n = impl.alphabet.size();

  if (sec[0] == "forbidden:") {
    impl.kind = PresentationKind::ForbiddenWords;
    std::vector<Word> forbidden;
    std::set<Word> seen;
    for (size_t i = 1; i < sec.size(); ++i) {
      Word w;
      try {
        w = parse_word(impl.alphabet, sec[i]);
      } catch (const input_error& e) {
        fail(name, sec_no, e.what());
      }
      if (w.empty()) fail(name, sec_no, "forbidden word must not be empty");
      if (!seen.insert(w).second)
        fail(name, sec_no, "duplicate forbidden word '" + sec[i] + "'");
      forbidden.push_back(std::move(w));
    }
    if (pos + 1 < lines.size())
      fail(name, lines[pos + 1].first, "unexpected content after forbidden list");
    impl.engine = std::make_unique<SftEngine>(impl.alphabet, std::move(forbidden));
  } else if (sec[0] == "matrix:") {
    impl.kind = PresentationKind::VertexShift;
    if (sec.size() > 1) fail(name, sec_no, "matrix rows start on the following lines");
    std::vector<std::vector<int>> rows;
    for (size_t i = pos + 1; i < lines.size(); ++i) {
      auto [no, line] = lines[i];
      auto toks = tokens_of(line);
      if (static_cast<int>(toks.size()) != n)
        fail(name, no, "matrix row needs " + std::to_string(n) + " entries");
      std::vector<int> row;
      for (const auto& t : toks) {
        if (t != "0" && t != "1") fail(name, no, "matrix entries must be 0 or 1");
        row.push_back(t == "1");
      }
      rows.push_back(std::move(row));
    }
    if (static_cast<int>(rows.size()) != n)
      fail(name, lines.back().first,
           "matrix needs " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
    // A 0-1 vertex matrix is the memory-1 SFT forbidding the words ab
    // with entry (a,b) = 0.
    std::vector<Word> forbidden;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (!rows[a][b]) forbidden.push_back(Word({a, b}));
    impl.engine = std::make_unique<SftEngine>(impl.alphabet, std::move(forbidden));
  } else if (sec[0] == "graph:") {
    impl.kind = PresentationKind::LabeledGraph;
    if (sec.size() > 1) fail(name, sec_no, "graph edges start on the following lines");
    std::vector<std::string> vnames;
    std::map<std::string, int> vindex;
    auto vertex = [&](const std::string& v, int no) {
      auto it = vindex.find(v);
      if (it != vindex.end()) return it->second;
      if (static_cast<int>(vnames.size()) >= kMaxGraphVertices)
        fail(name, no, "labeled graphs support at most 64 vertices");
      int id = static_cast<int>(vnames.size());
      vnames.push_back(v);
      vindex[v] = id;
      return id;
    };
    struct Edge {
      int src, sym, dst;
      auto operator<=>(const Edge&) const = default;
    };
    std::set<Edge> edges;
    for (size_t i = pos + 1; i < lines.size(); ++i) {
      auto [no, line] = lines[i];
      auto toks = tokens_of(line);
      if (toks.size() != 3 || toks[1].size() < 4 || toks[1].front() != '-' ||
          toks[1].compare(toks[1].size() - 2, 2, "->") != 0)
        fail(name, no, "expected an edge of the form 'src -sym-> dst'");
      std::string sym = toks[1].substr(1, toks[1].size() - 3);
      auto s = impl.alphabet.find(sym);
      if (!s) fail(name, no, "unknown edge label '" + sym + "'");
      Edge e{vertex(toks[0], no), *s, vertex(toks[2], no)};
      if (!edges.insert(e).second)
        fail(name, no, "duplicate edge '" + line + "'");
    }
    if (edges.empty()) fail(name, sec_no, "graph has no edges");
    std::vector<std::vector<std::uint64_t>> adj(
        n, std::vector<std::uint64_t>(vnames.size(), 0));
    for (const Edge& e : edges) adj[e.sym][e.src] |= std::uint64_t{1} << e.dst;
    impl.engine = std::make_unique<SoficEngine>(impl.alphabet, std::move(vnames), std::move(adj));
  } else {
    fail(name, sec_no, "expected one of 'forbidden:', 'matrix:', 'graph:'");
  }
  return shift;
}

const Alphabet& Subshift::alphabet() const { return impl_->alphabet; }
PresentationKind Subshift::kind() const { return impl_->kind; }
const std::string& Subshift::name() const { return impl_->name; }

bool Subshift::in_language(const Word& w) const {
  for (int i = 0; i < w.size(); ++i)
    if (w[i] < 0 || w[i] >= impl_->alphabet.size())
      throw input_error("word uses a symbol outside the alphabet");
  return impl_->engine->in_language(w);
}

const std::vector<Word>& Subshift::level_words(int k) const {
  if (k < 0) throw input_error("word length must be non-negative");
  std::lock_guard<std::mutex> lock(impl_->mu);
  if (impl_->lang.empty()) impl_->lang.push_back({Word()});
  while (static_cast<int>(impl_->lang.size()) <= k) {
    std::vector<Word> next;
    for (const Word& w : impl_->lang.back())
      for (int a = 0; a < impl_->alphabet.size(); ++a) {
        Word wa = w.append(a);
        if (impl_->engine->in_language(wa)) next.push_back(std::move(wa));
      }
    impl_->lang.push_back(std::move(next));
  }
  return impl_->lang[k];
}

std::vector<Word> Subshift::words_up_to(int l) const {
  std::vector<Word> out;
  for (int k = 0; k <= l; ++k) {
    const auto& level = level_words(k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

int Subshift::tail_count() const { return impl_->engine->tail_count(); }

std::string Subshift::tail_name(int tail) const { return impl_->engine->tail_name(tail); }

std::optional<int> Subshift::prepend(int sym, int tail) const {
  return impl_->engine->prepend(sym, tail);
}

std::optional<int> Subshift::prepend(const Word& mu, int tail) const {
  // mu x grows from the right: the last symbol of mu is attached first.
  std::optional<int> t = tail;
  for (int i = mu.size() - 1; i >= 0; --i) {
    t = impl_->engine->prepend(mu[i], *t);
    if (!t) return std::nullopt;
  }
  return t;
}

TailProbe Subshift::tail_of_prefix(const Word& w) const {
  if (!in_language(w)) throw input_error("word is not in the language");
  return impl_->engine->probe(w);
}

std::vector<Word> Subshift::left_extensions(int tail, int l) const {
  std::vector<Word> out;
  for (const Word& mu : words_up_to(l))
    if (prepend(mu, tail)) out.push_back(mu);
  return out;
}

}  // namespace oshift
