#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "graft/errors.hpp"

namespace graft {

// Generator letter of the genus-g surface group. Lowercase tokens "a1","b2"
// are generators, uppercase "A1","B2" their inverses. The letter order
// a1 < A1 < b1 < B1 < a2 < ... fixes every lexicographic tie-break in the
// project (canonical forms, enumeration, serialization).
struct Letter {
  std::uint8_t kind = 0;   // 0 = a, 1 = b
  std::uint16_t index = 1; // 1-based
  std::int8_t sign = 1;    // +1 or -1

  friend auto operator<=>(const Letter& x, const Letter& y) {
    if (auto c = x.index <=> y.index; c != 0) return c;
    if (auto c = x.kind <=> y.kind; c != 0) return c;
    return y.sign <=> x.sign;  // +1 sorts before -1
  }
  friend bool operator==(const Letter&, const Letter&) = default;

  Letter inverse() const { return Letter{kind, index, static_cast<std::int8_t>(-sign)}; }

  std::string token() const {
    char base = kind == 0 ? 'a' : 'b';
    if (sign < 0) base = static_cast<char>(std::toupper(base));
    return std::string(1, base) + std::to_string(index);
  }
};

using Word = std::vector<Letter>;

inline bool cancels(const Letter& x, const Letter& y) {
  return x.kind == y.kind && x.index == y.index && x.sign == -y.sign;
}

inline Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline std::string word_to_string(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += w[i].token();
  }
  return s;
}

// Parses the space-separated token syntax; genus 0 skips the range check.
inline Word parse_word(const std::string& text, int genus = 0) {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') { ++i; continue; }
    char ch = text[i];
    std::uint8_t kind;
    std::int8_t sign;
    if (ch == 'a') { kind = 0; sign = 1; }
    else if (ch == 'b') { kind = 1; sign = 1; }
    else if (ch == 'A') { kind = 0; sign = -1; }
    else if (ch == 'B') { kind = 1; sign = -1; }
    else fail(ErrorKind::Io, std::string("bad generator letter '") + ch + "' in word \"" + text + "\"");
    ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '0')
      fail(ErrorKind::Io, "generator index expected in word \"" + text + "\"");
    int idx = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      idx = idx * 10 + (text[i] - '0');
      ++i;
    }
    if (genus > 0 && idx > genus)
      fail(ErrorKind::Io, "generator index " + std::to_string(idx) + " exceeds genus " + std::to_string(genus));
    out.push_back(Letter{kind, static_cast<std::uint16_t>(idx), sign});
  }
  return out;
}

inline Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && cancels(out.back(), l)) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

inline Word cyclic_reduce(const Word& w) {
  Word out = free_reduce(w);
  while (out.size() >= 2 && cancels(out.front(), out.back())) {
    out.erase(out.begin());
    out.pop_back();
  }
  return out;
}

// The defining relator a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1.
inline Word surface_relator(int genus) {
  Word r;
  for (int i = 1; i <= genus; ++i) {
    auto idx = static_cast<std::uint16_t>(i);
    r.push_back(Letter{0, idx, 1});
    r.push_back(Letter{1, idx, 1});
    r.push_back(Letter{0, idx, -1});
    r.push_back(Letter{1, idx, -1});
  }
  return r;
}

namespace detail {

inline std::vector<Word> relator_rotations(int genus) {
  std::vector<Word> rots;
  Word r = surface_relator(genus);
  Word ri = inverse(r);
  std::size_t n = r.size();
  for (std::size_t s = 0; s < n; ++s) {
    Word a, b;
    for (std::size_t k = 0; k < n; ++k) {
      a.push_back(r[(s + k) % n]);
      b.push_back(ri[(s + k) % n]);
    }
    rots.push_back(a);
    rots.push_back(b);
  }
  return rots;
}

// Longest match of the cyclic word w starting at position i against the
// prefix of rot, capped at cap letters.
inline std::size_t cyclic_match_len(const Word& w, std::size_t i, const Word& rot, std::size_t cap) {
  std::size_t n = w.size();
  std::size_t len = 0;
  while (len < cap && w[(i + len) % n] == rot[len]) ++len;
  return len;
}

}  // namespace detail

// Dehn's algorithm: shrink any cyclic subword longer than half the relator.
// The result is cyclically reduced and contains no such subword.
inline Word dehn_reduce(const Word& input, int genus) {
  if (genus < 2) fail(ErrorKind::UnsupportedGenus, "surface group needs genus >= 2");
  const std::size_t rlen = 4 * static_cast<std::size_t>(genus);
  const std::size_t half = rlen / 2;
  static thread_local int cached_genus = 0;
  static thread_local std::vector<Word> rots;
  if (cached_genus != genus) {
    rots = detail::relator_rotations(genus);
    cached_genus = genus;
  }
  Word w = cyclic_reduce(input);
  bool changed = true;
  while (changed && !w.empty()) {
    changed = false;
    std::size_t n = w.size();
    std::size_t cap = std::min(n, rlen);
    for (std::size_t i = 0; i < n && !changed; ++i) {
      for (const Word& rot : rots) {
        std::size_t len = detail::cyclic_match_len(w, i, rot, cap);
        if (len > half) {
          // w contains u with u*v a relator rotation; substitute inverse(v).
          Word repl = inverse(Word(rot.begin() + static_cast<std::ptrdiff_t>(len), rot.end()));
          Word next = repl;
          for (std::size_t k = len; k < n; ++k) next.push_back(w[(i + k) % n]);
          w = cyclic_reduce(next);
          changed = true;
          break;
        }
      }
    }
  }
  return w;
}

namespace detail {

inline std::string word_key(const Word& w) {
  std::string s;
  s.reserve(w.size() * 4);
  for (const Letter& l : w) {
    s += static_cast<char>('0' + l.kind);
    s += static_cast<char>(l.sign > 0 ? '+' : '-');
    s += std::to_string(l.index);
    s += '.';
  }
  return s;
}

inline Word rotate(const Word& w, std::size_t s) {
  Word out;
  out.reserve(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) out.push_back(w[(s + k) % w.size()]);
  return out;
}

// Least rotation of w or of its inverse, under the project letter order.
inline Word least_cyclic_representative(const Word& w) {
  Word best = w;
  for (int invpass = 0; invpass < 2; ++invpass) {
    Word base = invpass ? inverse(w) : w;
    for (std::size_t s = 0; s < base.size(); ++s) {
      Word cand = rotate(base, s);
      if (std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end()))
        best = cand;
    }
  }
  return best;
}

// All words obtained from w by replacing a cyclic subword equal to exactly
// half of a relator rotation with the inverse of the other half. These are
// the length-preserving conjugacy moves that Dehn reduction cannot see;
// e.g. at genus 2 they identify "a1 b1 A1 B1" with "b2 a2 B2 A2".
inline std::vector<Word> half_relator_rewrites(const Word& w, int genus,
                                               const std::vector<Word>& rots) {
  std::vector<Word> out;
  const std::size_t half = 2 * static_cast<std::size_t>(genus);
  std::size_t n = w.size();
  if (n < half) return out;
  for (std::size_t i = 0; i < n; ++i) {
    for (const Word& rot : rots) {
      if (cyclic_match_len(w, i, rot, half) == half) {
        Word repl = inverse(Word(rot.begin() + static_cast<std::ptrdiff_t>(half), rot.end()));
        Word next = repl;
        for (std::size_t k = half; k < n; ++k) next.push_back(w[(i + k) % n]);
        out.push_back(next);
      }
    }
  }
  return out;
}

}  // namespace detail

// Unoriented free-homotopy class of a closed curve, stored as the canonical
// cyclic word: Dehn-reduced, then minimized over rotations, inversion and
// half-relator rewrites.
struct ConjClass {
  int genus = 0;
  Word word;        // canonical representative
  std::string key;  // cached comparison key

  friend bool operator==(const ConjClass& x, const ConjClass& y) { return x.key == y.key && x.genus == y.genus; }
  friend bool operator<(const ConjClass& x, const ConjClass& y) {
    if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
    return std::lexicographical_compare(x.word.begin(), x.word.end(), y.word.begin(), y.word.end());
  }
  std::string str() const { return word_to_string(word); }
};

inline ConjClass canonical_class(const Word& input, int genus) {
  Word seed = dehn_reduce(input, genus);
  if (seed.empty()) fail(ErrorKind::TrivialClass, "word reduces to the identity");
  static thread_local int cached_genus = 0;
  static thread_local std::vector<Word> rots;
  if (cached_genus != genus) {
    rots = detail::relator_rotations(genus);
    cached_genus = genus;
  }
  // Closure under half-relator rewrites at the minimal length reached.
  std::set<std::string> seen;
  std::vector<Word> frontier{seed};
  std::vector<Word> minimal;
  std::size_t best_len = seed.size();
  std::size_t guard = 0;
  while (!frontier.empty()) {
    if (++guard > 20000) fail(ErrorKind::Internal, "conjugacy closure did not stabilize");
    Word w = frontier.back();
    frontier.pop_back();
    if (w.size() > best_len) continue;
    if (w.size() < best_len) {
      best_len = w.size();
      minimal.clear();
      seen.clear();
    }
    Word rep = detail::least_cyclic_representative(w);
    if (!seen.insert(detail::word_key(rep)).second) continue;
    minimal.push_back(rep);
    for (int invpass = 0; invpass < 2; ++invpass) {
      Word base = invpass ? inverse(w) : w;
      for (Word& cand : detail::half_relator_rewrites(base, genus, rots)) {
        Word red = dehn_reduce(cand, genus);
        if (red.empty()) fail(ErrorKind::Internal, "conjugacy closure hit the identity");
        if (red.size() <= best_len) frontier.push_back(red);
      }
    }
  }
  Word best = minimal.front();
  for (const Word& w : minimal)
    if (std::lexicographical_compare(w.begin(), w.end(), best.begin(), best.end())) best = w;
  return ConjClass{genus, best, detail::word_key(best)};
}

inline ConjClass canonical_class(const std::string& text, int genus) {
  return canonical_class(parse_word(text, genus), genus);
}

// True iff the canonical cyclic word is not a proper power as a cyclic word.
inline bool is_primitive(const ConjClass& c) {
  const Word& w = c.word;
  std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t k = 0; k < n && periodic; ++k)
      if (!(w[k] == w[(k + d) % n])) periodic = false;
    if (periodic) return false;
  }
  return true;
}

}  // namespace graft
