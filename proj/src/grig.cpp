#include "grigv/grig.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace grigv {

namespace {

// Wreath data of the four generators: root swap, and the two first-level
// states encoded as -1 (identity) or a letter index.
//   a = swap (1,1),  b = (a,c),  c = (a,d),  d = (1,b)
constexpr bool kSwap[4] = {true, false, false, false};
constexpr int kState0[4] = {-1, 0, 0, -1};  // a,b,c,d at child 0
constexpr int kState1[4] = {-1, 2, 3, 1};   // a,b,c,d at child 1

// Klein four-group {1,b,c,d}: product of two distinct letters from {b,c,d}
// is the third one.
Letter klein_mult(Letter x, Letter y) {
  int sum = static_cast<int>(x) + static_cast<int>(y);  // b=1,c=2,d=3
  return static_cast<Letter>(6 - sum);
}

void check_level(int level) {
  if (level < 0 || level > kLevelCap)
    throw std::invalid_argument("level out of range [0, " +
                                std::to_string(kLevelCap) + "]");
}

}  // namespace

char letter_char(Letter s) { return static_cast<char>('a' + static_cast<int>(s)); }

Letter letter_from_char(char c) {
  if (c < 'a' || c > 'd') throw std::invalid_argument("letter must be one of a,b,c,d");
  return static_cast<Letter>(c - 'a');
}

GrigWord::GrigWord(std::string_view letters) : letters_(letters) {
  for (char c : letters_) letter_from_char(c);
}

GrigWord GrigWord::single(Letter s) { return GrigWord(std::string(1, letter_char(s))); }

Letter GrigWord::letter_at(std::size_t i) const { return letter_from_char(letters_[i]); }

GrigWord GrigWord::inverse() const {
  GrigWord r = *this;
  std::reverse(r.letters_.begin(), r.letters_.end());
  return r;
}

GrigWord GrigWord::operator*(const GrigWord& rhs) const {
  GrigWord r = *this;
  r.letters_ += rhs.letters_;
  return r;
}

Vertex::Vertex(std::string_view b) : bits(b) {
  for (char c : bits)
    if (c != '0' && c != '1') throw std::invalid_argument("vertex bits must be 0/1");
  if (level() > kLevelCap) throw std::invalid_argument("vertex level exceeds cap");
}

uint32_t vertex_index(const Vertex& v) {
  uint32_t idx = 0;
  for (char c : v.bits) idx = (idx << 1) | static_cast<uint32_t>(c - '0');
  return idx;
}

Vertex vertex_from_index(uint32_t idx, int level) {
  check_level(level);
  std::string bits(static_cast<size_t>(level), '0');
  for (int i = level - 1; i >= 0; --i) {
    bits[static_cast<size_t>(i)] = static_cast<char>('0' + (idx & 1u));
    idx >>= 1;
  }
  return Vertex(bits);
}

BoundaryPoint BoundaryPoint::from_stem(std::string_view raw) {
  for (char c : raw)
    if (c != '0' && c != '1') throw std::invalid_argument("stem bits must be 0/1");
  size_t end = raw.size();
  while (end > 0 && raw[end - 1] == '1') --end;
  return BoundaryPoint{std::string(raw.substr(0, end))};
}

LevelPermutation::LevelPermutation(int level, std::vector<uint32_t> images)
    : level_(level), images_(std::move(images)) {
  check_level(level);
  if (images_.size() != (size_t{1} << level_))
    throw std::invalid_argument("level permutation has wrong size");
}

LevelPermutation LevelPermutation::identity(int level) {
  check_level(level);
  std::vector<uint32_t> im(size_t{1} << level);
  for (size_t i = 0; i < im.size(); ++i) im[i] = static_cast<uint32_t>(i);
  return LevelPermutation(level, std::move(im));
}

bool LevelPermutation::is_identity() const {
  for (size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

LevelPermutation LevelPermutation::then(const LevelPermutation& next) const {
  if (level_ != next.level_) throw std::invalid_argument("level mismatch");
  std::vector<uint32_t> im(images_.size());
  for (size_t i = 0; i < images_.size(); ++i) im[i] = next.images_[images_[i]];
  return LevelPermutation(level_, std::move(im));
}

LevelPermutation LevelPermutation::inverse() const {
  std::vector<uint32_t> im(images_.size());
  for (size_t i = 0; i < images_.size(); ++i) im[images_[i]] = static_cast<uint32_t>(i);
  return LevelPermutation(level_, std::move(im));
}

WreathDecomp wreath_decompose(const GrigWord& w) {
  // (s1...sk)_x = (s1)_{x0} (s2)_{x1} ... with x0 = x, x_{i+1} = x_i * s_i.
  WreathDecomp d;
  std::string c0, c1;
  int at0 = 0, at1 = 1;  // trajectories of the two first-level vertices
  for (char ch : w.str()) {
    int s = ch - 'a';
    int st0 = (at0 == 0) ? kState0[s] : kState1[s];
    int st1 = (at1 == 0) ? kState0[s] : kState1[s];
    if (st0 >= 0) c0 += static_cast<char>('a' + st0);
    if (st1 >= 0) c1 += static_cast<char>('a' + st1);
    if (kSwap[s]) {
      std::swap(at0, at1);
      d.root_swap = !d.root_swap;
    }
  }
  d.child0 = GrigWord(c0);
  d.child1 = GrigWord(c1);
  return d;
}

GrigWord state(const GrigWord& w, const Vertex& v) {
  GrigWord cur = w;
  for (char bit : v.bits) {
    WreathDecomp d = wreath_decompose(cur);
    cur = (bit == '0') ? std::move(d.child0) : std::move(d.child1);
  }
  return cur;
}

Vertex act_vertex(const Vertex& v, Letter s) {
  std::string out = v.bits;
  int cur = static_cast<int>(s);
  for (size_t i = 0; i < out.size() && cur >= 0; ++i) {
    int x = out[i] - '0';
    if (kSwap[cur]) out[i] = static_cast<char>('0' + (1 - x));
    cur = (x == 0) ? kState0[cur] : kState1[cur];
  }
  Vertex r;
  r.bits = std::move(out);
  return r;
}

Vertex act_vertex(const Vertex& v, const GrigWord& w) {
  Vertex cur = v;
  for (char ch : w.str()) cur = act_vertex(cur, letter_from_char(ch));
  return cur;
}

BoundaryPoint act_boundary(const BoundaryPoint& p, Letter s) {
  // Walk the stem applying states; when the stem is exhausted the
  // remaining point is 1^inf and the acting state is in {1,a,b,c,d}:
  // a sends it to 0*1^inf, the others fix it.
  std::string out;
  out.reserve(p.stem.size() + 1);
  int cur = static_cast<int>(s);
  size_t i = 0;
  for (; i < p.stem.size(); ++i) {
    if (cur < 0) {
      out += p.stem.substr(i);
      break;
    }
    int x = p.stem[i] - '0';
    out += static_cast<char>('0' + (kSwap[cur] ? 1 - x : x));
    cur = (x == 0) ? kState0[cur] : kState1[cur];
  }
  if (i == p.stem.size() && cur >= 0 && kSwap[cur]) out += '0';
  return BoundaryPoint::from_stem(out);
}

BoundaryPoint act_boundary(const BoundaryPoint& p, const GrigWord& w) {
  BoundaryPoint cur = p;
  for (char ch : w.str()) cur = act_boundary(cur, letter_from_char(ch));
  return cur;
}

GrigWord reduce_word(const GrigWord& w) {
  std::string out;
  out.reserve(w.length());
  for (char ch : w.str()) {
    char s = ch;
    bool absorbed = false;
    while (!out.empty() && !absorbed) {
      char t = out.back();
      if (t == 'a' && s == 'a') {
        out.pop_back();
        absorbed = true;
      } else if (t != 'a' && s != 'a') {
        out.pop_back();
        if (t == s) {
          absorbed = true;  // xx = 1
        } else {
          s = letter_char(klein_mult(letter_from_char(t), letter_from_char(s)));
        }
      } else {
        break;  // alternating, nothing to combine
      }
    }
    if (!absorbed) out += s;
  }
  return GrigWord(out);
}

namespace {

std::unordered_map<std::string, bool>& trivial_memo() {
  static std::unordered_map<std::string, bool> memo;
  return memo;
}
std::mutex trivial_mutex;

bool is_trivial_reduced(const GrigWord& w, int budget) {
  if (w.empty()) return true;
  if (w.length() == 1) return false;
  if (budget < 0) throw std::logic_error("is_trivial contraction failed to shrink");
  {
    std::lock_guard<std::mutex> lock(trivial_mutex);
    auto it = trivial_memo().find(w.str());
    if (it != trivial_memo().end()) return it->second;
  }
  bool result;
  WreathDecomp d = wreath_decompose(w);
  if (d.root_swap) {
    result = false;
  } else {
    result = is_trivial_reduced(reduce_word(d.child0), budget - 1) &&
             is_trivial_reduced(reduce_word(d.child1), budget - 1);
  }
  {
    std::lock_guard<std::mutex> lock(trivial_mutex);
    trivial_memo().emplace(w.str(), result);
  }
  return result;
}

}  // namespace

bool is_trivial(const GrigWord& w) {
  GrigWord r = reduce_word(w);
  // children of a reduced word of length m have length <= (m+1)/2, so the
  // recursion bottoms out within ceil(log2 m) + 2 levels
  int bound = 2;
  while ((size_t{1} << (bound - 2)) < std::max<size_t>(r.length(), 1)) ++bound;
  return is_trivial_reduced(r, bound);
}

namespace {

struct LetterTables {
  // tables[level][letter] built lazily
  std::vector<std::array<std::vector<uint32_t>, 4>> tables;
  std::mutex mutex;
};

LetterTables& letter_tables() {
  static LetterTables t;
  return t;
}

std::vector<uint32_t> build_letter_table(Letter s, int level,
                                         const std::array<std::vector<uint32_t>, 4>& below) {
  size_t size = size_t{1} << level;
  std::vector<uint32_t> t(size);
  if (level == 0) {
    t[0] = 0;
    return t;
  }
  int si = static_cast<int>(s);
  uint32_t half = static_cast<uint32_t>(size >> 1);
  for (uint32_t v = 0; v < size; ++v) {
    uint32_t x = v >> (level - 1);
    uint32_t rest = v & (half - 1);
    uint32_t y = kSwap[si] ? 1 - x : x;
    int st = (x == 0) ? kState0[si] : kState1[si];
    uint32_t rest_img = (st < 0) ? rest : below[static_cast<size_t>(st)][rest];
    t[v] = (y << (level - 1)) | rest_img;
  }
  return t;
}

}  // namespace

const std::vector<uint32_t>& letter_level_table(Letter s, int level) {
  check_level(level);
  LetterTables& lt = letter_tables();
  std::lock_guard<std::mutex> lock(lt.mutex);
  if (static_cast<int>(lt.tables.size()) <= level) lt.tables.resize(static_cast<size_t>(level) + 1);
  auto& slot = lt.tables[static_cast<size_t>(level)];
  if (slot[static_cast<size_t>(s)].empty()) {
    // build all levels up to `level` bottom-up
    for (int lv = 0; lv <= level; ++lv) {
      auto& row = lt.tables[static_cast<size_t>(lv)];
      for (int g = 0; g < 4; ++g) {
        if (!row[static_cast<size_t>(g)].empty()) continue;
        row[static_cast<size_t>(g)] = build_letter_table(
            static_cast<Letter>(g), lv,
            lv == 0 ? row : lt.tables[static_cast<size_t>(lv - 1)]);
      }
    }
  }
  return slot[static_cast<size_t>(s)];
}

LevelPermutation level_permutation(const GrigWord& w, int level) {
  check_level(level);
  const std::vector<uint32_t>* tabs[4];
  for (int g = 0; g < 4; ++g) tabs[g] = &letter_level_table(static_cast<Letter>(g), level);
  size_t size = size_t{1} << level;
  std::vector<uint32_t> im(size);
  for (size_t v = 0; v < size; ++v) {
    uint32_t cur = static_cast<uint32_t>(v);
    for (char ch : w.str()) cur = (*tabs[ch - 'a'])[cur];
    im[v] = cur;
  }
  return LevelPermutation(level, std::move(im));
}

int canonical_key_level(int max_len) {
  if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
  int m = 0;
  while ((1 << m) < std::max(max_len, 1)) ++m;  // ceil(log2)
  return m + 4;
}

LevelPermutation canonical_key(const GrigWord& w, int max_len) {
  return level_permutation(reduce_word(w), canonical_key_level(max_len));
}

std::vector<GrigWord> nucleus_states(const GrigWord& w, int level) {
  check_level(level);
  std::vector<GrigWord> cur{reduce_word(w)};
  for (int lv = 0; lv < level; ++lv) {
    std::vector<GrigWord> next;
    next.reserve(cur.size() * 2);
    for (const GrigWord& g : cur) {
      WreathDecomp d = wreath_decompose(g);
      next.push_back(reduce_word(d.child0));
      next.push_back(reduce_word(d.child1));
    }
    cur = std::move(next);
  }
  return cur;
}

bool in_nucleus(const GrigWord& reduced) { return reduced.length() <= 1; }

}  // namespace grigv
