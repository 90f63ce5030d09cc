#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Exact arithmetic for the first Grigorchuk group G = <a,b,c,d> acting on
// the binary rooted tree {0,1}* and on its boundary.
//
// Conventions used throughout the library:
//   - all actions are right actions: point v, element g, image v*g;
//   - products gh mean "apply g first, then h";
//   - states satisfy (gh)_v = g_v * h_{v*g}.

namespace grigv {

inline constexpr int kLevelCap = 20;  // hard cap for level permutations / graphs

enum class Letter : uint8_t { A = 0, B = 1, C = 2, D = 3 };

char letter_char(Letter s);
Letter letter_from_char(char c);

// A word over {a,b,c,d}; the empty word is the identity. Since every
// generator is an involution, the inverse of a word is its reversal.
class GrigWord {
public:
  GrigWord() = default;
  explicit GrigWord(std::string_view letters);  // validates characters

  static GrigWord identity() { return GrigWord(); }
  static GrigWord single(Letter s);

  const std::string& str() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter letter_at(std::size_t i) const;

  GrigWord inverse() const;
  GrigWord operator*(const GrigWord& rhs) const;  // this first, then rhs

  auto operator<=>(const GrigWord&) const = default;

private:
  std::string letters_;  // chars 'a'..'d'
};

// Vertex of the rooted binary tree; level = number of bits, first char is
// the bit next to the root.
struct Vertex {
  std::string bits;

  Vertex() = default;
  explicit Vertex(std::string_view b);
  int level() const { return static_cast<int>(bits.size()); }
  auto operator<=>(const Vertex&) const = default;
};

uint32_t vertex_index(const Vertex& v);               // MSB-first binary value
Vertex vertex_from_index(uint32_t idx, int level);

// Point u*1^inf of the boundary orbit of 1^inf, stored by its canonical
// stem: trailing 1s stripped, so the stem is empty or ends in '0'.
struct BoundaryPoint {
  std::string stem;

  static BoundaryPoint rho() { return BoundaryPoint{}; }
  static BoundaryPoint from_stem(std::string_view raw);
  bool is_rho() const { return stem.empty(); }
  auto operator<=>(const BoundaryPoint&) const = default;
};

struct WreathDecomp {
  bool root_swap = false;
  GrigWord child0;
  GrigWord child1;
};

// Image of the level-n congruence quotient: a permutation of {0,1}^n held
// as the image table over vertex indices.
class LevelPermutation {
public:
  LevelPermutation() : level_(0), images_{0} {}
  LevelPermutation(int level, std::vector<uint32_t> images);

  static LevelPermutation identity(int level);

  int level() const { return level_; }
  const std::vector<uint32_t>& images() const { return images_; }
  uint32_t map(uint32_t idx) const { return images_[idx]; }
  bool is_identity() const;

  LevelPermutation then(const LevelPermutation& next) const;  // this, then next
  LevelPermutation inverse() const;

  bool operator==(const LevelPermutation&) const = default;

private:
  int level_;
  std::vector<uint32_t> images_;
};

WreathDecomp wreath_decompose(const GrigWord& w);

// State w_v: (vu)*w = (v*w)(u*w_v) for all u.
GrigWord state(const GrigWord& w, const Vertex& v);

Vertex act_vertex(const Vertex& v, Letter s);
Vertex act_vertex(const Vertex& v, const GrigWord& w);

BoundaryPoint act_boundary(const BoundaryPoint& p, Letter s);
BoundaryPoint act_boundary(const BoundaryPoint& p, const GrigWord& w);

// Canonical alternating form [a] x a x a ... [a] with x in {b,c,d}, via the
// involution relations and the Klein four-group structure of {1,b,c,d}.
// Idempotent; never increases length.
GrigWord reduce_word(const GrigWord& w);

// Word problem. Contraction: reduce, refuse on a root swap, otherwise
// recurse into both wreath children. Memoized on reduced words.
bool is_trivial(const GrigWord& w);

// pi_n(s) as a flat image table; cached per (letter, level).
const std::vector<uint32_t>& letter_level_table(Letter s, int level);

LevelPermutation level_permutation(const GrigWord& w, int level);

// Equality key for elements of word length <= max_len: the level
// ceil(log2(max_len)) + 4 permutation separates such elements exactly
// (states at level ceil(log2 max_len) + 1 lie in {1,a,b,c,d}, and those
// five are separated three levels further down).
int canonical_key_level(int max_len);
LevelPermutation canonical_key(const GrigWord& w, int max_len);

// The 2^n states {w_v : v in X_n}, each reduced, in vertex-index order.
std::vector<GrigWord> nucleus_states(const GrigWord& w, int level);

// Membership in {1, a, b, c, d} for a reduced word.
bool in_nucleus(const GrigWord& reduced);

}  // namespace grigv
