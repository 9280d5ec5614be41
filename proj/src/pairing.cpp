#include "ncycle/pairing.hpp"

#include <algorithm>
#include <numeric>

#include "ncycle/reduction.hpp"

namespace ncycle {

namespace {

std::size_t idx(int point) { return static_cast<std::size_t>(point - 1); }

// Validates that blocks partition [n]; returns the block label of each point.
std::vector<int> partition_labels(int n, const std::vector<Block>& blocks) {
  if (n < 0) throw InvalidArgument("n must be nonnegative");
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw InvalidArgument("partition has an empty block");
    for (int i : blocks[b]) {
      if (i < 1 || i > n) {
        throw InvalidArgument("point " + std::to_string(i) +
                              " is outside [1, " + std::to_string(n) + "]");
      }
      if (label[idx(i)] != -1) {
        throw InvalidArgument("point " + std::to_string(i) +
                              " appears in two blocks");
      }
      label[idx(i)] = static_cast<int>(b);
    }
  }
  for (int i = 1; i <= n; ++i) {
    if (label[idx(i)] == -1) {
      throw InvalidArgument("point " + std::to_string(i) +
                            " is not covered by any block");
    }
  }
  return label;
}

// Is point q strictly inside the clockwise gap that starts right after i and
// holds `gap` points?
bool in_gap(int q, int i, int gap, int n) {
  return ((q - i - 1) % n + n) % n < gap;
}

std::vector<Orientation> compute_orientations(const std::vector<int>& partner) {
  const int n = static_cast<int>(partner.size());
  std::vector<int> singles_prefix(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    singles_prefix[idx(i) + 1] =
        singles_prefix[idx(i)] + (partner[idx(i)] == 0 ? 1 : 0);
  }
  std::vector<Orientation> orient(static_cast<std::size_t>(n), Orientation::out);
  for (int r = 1; r <= n; ++r) {
    int s = partner[idx(r)];
    if (s <= r) continue;
    // [r, s] with r < s is the plain interval r..s.
    bool inner_singleton = singles_prefix[idx(s) + 1] - singles_prefix[idx(r)] > 0;
    if (inner_singleton) {
      orient[idx(r)] = Orientation::in;
    } else {
      orient[idx(s)] = Orientation::in;
    }
  }
  return orient;
}

}  // namespace

bool is_non_crossing(const std::vector<int>& label) {
  if (label.empty()) return true;
  const int max_label = *std::max_element(label.begin(), label.end());
  std::vector<std::size_t> last(static_cast<std::size_t>(max_label) + 1, 0);
  for (std::size_t i = 0; i < label.size(); ++i) {
    last[static_cast<std::size_t>(label[i])] = i;
  }
  std::vector<char> seen(last.size(), 0);
  std::vector<int> open;
  for (std::size_t i = 0; i < label.size(); ++i) {
    const int b = label[i];
    const auto ub = static_cast<std::size_t>(b);
    if (seen[ub]) {
      if (open.empty() || open.back() != b) return false;
      if (i == last[ub]) open.pop_back();
    } else {
      seen[ub] = 1;
      if (i != last[ub]) open.push_back(b);
    }
  }
  return true;
}

bool is_half_pairing(int n, const std::vector<Block>& blocks) {
  std::vector<int> label = partition_labels(n, blocks);
  bool any_singleton = false;
  for (const Block& b : blocks) {
    if (b.size() > 2) return false;
    if (b.size() == 1) any_singleton = true;
  }
  if (!any_singleton) return false;
  if (!is_non_crossing(label)) return false;
  // Merge every singleton into one block.
  const int merged = static_cast<int>(blocks.size());
  for (const Block& b : blocks) {
    if (b.size() == 1) label[idx(b.front())] = merged;
  }
  return is_non_crossing(label);
}

// ---------------------------------------------------------------------------
// HalfPairing

HalfPairing::HalfPairing(std::vector<int> partner)
    : partner_(std::move(partner)), orient_(compute_orientations(partner_)) {}

HalfPairing HalfPairing::from_blocks(int n, const std::vector<Block>& blocks) {
  if (!is_half_pairing(n, blocks)) {
    throw InvalidArgument("blocks do not form a non-crossing half-pairing");
  }
  std::vector<int> partner(static_cast<std::size_t>(n), 0);
  for (const Block& b : blocks) {
    if (b.size() == 2) {
      partner[idx(b[0])] = b[1];
      partner[idx(b[1])] = b[0];
    }
  }
  return HalfPairing(std::move(partner));
}

HalfPairing HalfPairing::from_partners(std::vector<int> partner) {
  const int n = static_cast<int>(partner.size());
  std::vector<Block> blocks;
  for (int i = 1; i <= n; ++i) {
    int m = partner[idx(i)];
    if (m == 0) {
      blocks.push_back({i});
    } else if (m < 1 || m > n || partner[idx(m)] != i || m == i) {
      throw InvalidArgument("partner table is not an involution on [n]");
    } else if (i < m) {
      blocks.push_back({i, m});
    }
  }
  return from_blocks(n, blocks);
}

std::vector<std::pair<int, int>> HalfPairing::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n(); ++i) {
    if (mate(i) > i) out.emplace_back(i, mate(i));
  }
  return out;
}

std::vector<int> HalfPairing::singletons() const {
  std::vector<int> out;
  for (int i = 1; i <= n(); ++i) {
    if (mate(i) == 0) out.push_back(i);
  }
  return out;
}

std::vector<Block> HalfPairing::blocks() const {
  std::vector<Block> out;
  for (int i = 1; i <= n(); ++i) {
    if (mate(i) == 0) {
      out.push_back({i});
    } else if (mate(i) > i) {
      out.push_back({i, mate(i)});
    }
  }
  return out;
}

HalfPairing HalfPairing::rotated(int r) const {
  const int size = n();
  auto shift = [&](int i) { return ((i - 1 + r) % size + size) % size + 1; };
  std::vector<int> partner(partner_.size(), 0);
  for (int i = 1; i <= size; ++i) {
    if (mate(i) != 0) partner[idx(shift(i))] = shift(mate(i));
  }
  return HalfPairing(std::move(partner));
}

std::vector<Orientation> orientations(const HalfPairing& p) {
  return p.orientations();
}

std::vector<std::pair<int, int>> cover_relation(const HalfPairing& p) {
  const int n = p.n();
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n; ++i) {
    if (p.orientation(i) != Orientation::out) continue;
    for (int j = 1; j <= n; ++j) {
      if (j == i || p.orientation(j) != Orientation::out) continue;
      const int gap = ((j - i - 1) % n + n) % n;
      bool closed = true;
      for (int step = 0; step < gap && closed; ++step) {
        const int q = (i + step) % n + 1;
        const int m = p.mate(q);
        closed = m != 0 && in_gap(m, i, gap, n);
      }
      if (closed) out.emplace_back(i, j);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// w-pairings

namespace {

void check_length(const Word& w, const HalfPairing& p) {
  if (static_cast<int>(w.size()) != p.n()) {
    throw InvalidArgument("word length " + std::to_string(w.size()) +
                          " does not match half-pairing size " +
                          std::to_string(p.n()));
  }
}

bool is_rotation_of(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a.rotate(r) == b) return true;
  }
  return false;
}

Word through_string_letters(const Word& w, const HalfPairing& p) {
  std::vector<Letter> letters;
  for (int i : p.singletons()) letters.push_back(w[idx(i)]);
  return Word(w.alphabet_size(), std::move(letters));
}

}  // namespace

bool is_w_pairing(const Word& w, const HalfPairing& p) {
  check_length(w, p);
  for (auto [r, s] : p.pairs()) {
    if (!w[idx(r)].cancels(w[idx(s)])) return false;
  }
  Word v = through_string_letters(w, p);
  return is_cyclically_reduced(v) && is_rotation_of(v, cyclic_reduce(w));
}

bool is_w_admissible(const Word& w, const HalfPairing& p) {
  if (!is_w_pairing(w, p)) return false;
  for (auto [i, j] : cover_relation(p)) {
    if (w[idx(i)].cancels(w[idx(j)])) return false;
  }
  return true;
}

bool is_w_pairing(const Word& w, const std::vector<Block>& blocks) {
  const int n = static_cast<int>(w.size());
  if (!is_half_pairing(n, blocks)) return false;
  return is_w_pairing(w, HalfPairing::from_blocks(n, blocks));
}

bool is_w_admissible(const Word& w, const std::vector<Block>& blocks) {
  const int n = static_cast<int>(w.size());
  if (!is_half_pairing(n, blocks)) return false;
  return is_w_admissible(w, HalfPairing::from_blocks(n, blocks));
}

HalfPairing admissible_half_pairing_from(const Word& w, std::size_t r) {
  const std::size_t n = w.size();
  if (n == 0 || r >= n) throw InvalidArgument("rotation offset out of range");
  Word rotated = w.rotate(r);
  if (!has_good_reduction(rotated)) {
    throw InvalidArgument("rotation " + std::to_string(r) +
                          " does not have good reduction");
  }
  StackReduction red = stack_reduce(rotated.letters());
  auto original = [&](std::size_t q) { return static_cast<int>((q + r) % n) + 1; };
  std::vector<int> partner(n, 0);
  for (std::size_t q = 0; q < n; ++q) {
    if (red.partner[q]) partner[idx(original(q))] = original(*red.partner[q]);
  }
  return HalfPairing::from_partners(std::move(partner));
}

HalfPairing admissible_half_pairing(const Word& w) {
  auto r = first_good_rotation(w);
  if (!r) {
    throw InvalidArgument(
        "word reduces to 1: no half-pairing has zero through strings");
  }
  return admissible_half_pairing_from(w, *r);
}

Word standard_cyclic_reduction(const Word& w) {
  auto r = first_good_rotation(w);
  if (!r) return Word(w.alphabet_size());
  return through_string_letters(w, admissible_half_pairing_from(w, *r));
}

std::string render_ascii(const HalfPairing& p) {
  std::string out;
  for (int i = 1; i <= p.n(); ++i) {
    const int m = p.mate(i);
    if (m != 0 && m < i) continue;
    if (!out.empty()) out += ", ";
    out += m == 0 ? "|" + std::to_string(i)
                  : std::to_string(i) + "—" + std::to_string(m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dot diagrams

int DotDiagram::black_count() const {
  return static_cast<int>(std::count(colors.begin(), colors.end(), 'B'));
}

DotDiagram parse_dots(std::string_view text) {
  for (char c : text) {
    if (c != 'B' && c != 'W') {
      throw InvalidArgument(std::string("dot diagram character '") + c +
                            "' is not B or W");
    }
  }
  return DotDiagram{std::string(text)};
}

DotDiagram to_dots(const HalfPairing& p) {
  DotDiagram d;
  d.colors.reserve(static_cast<std::size_t>(p.n()));
  for (int i = 1; i <= p.n(); ++i) {
    bool black = !p.is_singleton(i) && p.orientation(i) == Orientation::out;
    d.colors.push_back(black ? 'B' : 'W');
  }
  return d;
}

HalfPairing from_dots(const DotDiagram& d) {
  parse_dots(d.colors);
  const int n = d.n();
  if (d.black_count() >= d.white_count()) {
    throw InvalidArgument(
        "dot diagram needs fewer black than white dots (at least one "
        "through string)");
  }
  std::vector<int> partner(static_cast<std::size_t>(n), 0);
  std::vector<int> open;
  // Two laps around the circle: blacks still open after the first lap wrap
  // around to whites near the start.
  for (int lap = 0; lap < 2; ++lap) {
    for (int i = 1; i <= n; ++i) {
      if (d.colors[idx(i)] == 'B') {
        if (lap == 0) open.push_back(i);
      } else if (partner[idx(i)] == 0 && !open.empty()) {
        partner[idx(i)] = open.back();
        partner[idx(open.back())] = i;
        open.pop_back();
      }
    }
  }
  return HalfPairing::from_partners(std::move(partner));
}

std::vector<HalfPairing> enumerate_half_pairings(int n, int k) {
  if (k < 1 || k > n || (n - k) % 2 != 0) {
    throw InvalidArgument("need 1 <= k <= n with n - k even (n=" +
                          std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  const int blacks = (n - k) / 2;
  std::vector<int> pos(static_cast<std::size_t>(blacks));
  std::iota(pos.begin(), pos.end(), 0);
  std::vector<HalfPairing> out;
  while (true) {
    DotDiagram d{std::string(static_cast<std::size_t>(n), 'W')};
    for (int b : pos) d.colors[static_cast<std::size_t>(b)] = 'B';
    out.push_back(from_dots(d));
    // Next combination in lexicographic order.
    int i = blacks - 1;
    while (i >= 0 && pos[static_cast<std::size_t>(i)] == n - blacks + i) --i;
    if (i < 0) break;
    ++pos[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < blacks; ++j) {
      pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

}  // namespace ncycle
