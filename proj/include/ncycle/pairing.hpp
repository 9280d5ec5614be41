#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ncycle/word.hpp"

namespace ncycle {

/// A block of a partition of [n]; points are 1-based.
using Block = std::vector<int>;

enum class Orientation { out, in };

/// A non-crossing partition of [n] into pairs and at least one singleton
/// (through string), such that merging all singletons into one block is
/// still non-crossing.
///
/// Points are 1-based throughout. Instances are always valid: the factory
/// functions reject anything else.
class HalfPairing {
 public:
  /// Throws InvalidArgument unless is_half_pairing(n, blocks).
  static HalfPairing from_blocks(int n, const std::vector<Block>& blocks);
  /// partner[i-1] is the mate of point i, or 0 for a through string.
  static HalfPairing from_partners(std::vector<int> partner);

  int n() const { return static_cast<int>(partner_.size()); }
  /// Mate of point i, or 0 if i is a singleton.
  int mate(int i) const { return partner_.at(static_cast<std::size_t>(i - 1)); }
  bool is_singleton(int i) const { return mate(i) == 0; }

  /// Pairs (r, s) with r < s, sorted by r.
  std::vector<std::pair<int, int>> pairs() const;
  std::vector<int> singletons() const;
  std::vector<Block> blocks() const;

  /// Out/in per point (index i-1 for point i).
  const std::vector<Orientation>& orientations() const { return orient_; }
  Orientation orientation(int i) const {
    return orient_.at(static_cast<std::size_t>(i - 1));
  }

  /// Shifts every index by +r mod n: point i becomes ((i - 1 + r) mod n) + 1.
  HalfPairing rotated(int r) const;

  friend bool operator==(const HalfPairing& a, const HalfPairing& b) {
    return a.partner_ == b.partner_;
  }

 private:
  explicit HalfPairing(std::vector<int> partner);
  std::vector<int> partner_;
  std::vector<Orientation> orient_;
};

/// Throws InvalidArgument if blocks is not a partition of [n].
bool is_half_pairing(int n, const std::vector<Block>& blocks);

/// True if the block labelling (label[i-1] = block id of point i) has no
/// crossing. Linear time.
bool is_non_crossing(const std::vector<int>& label);

std::vector<Orientation> orientations(const HalfPairing& p);

/// All (i, j), i != j, where i covers j: both are out-points and the
/// clockwise gap strictly between them is empty or paired within itself.
std::vector<std::pair<int, int>> cover_relation(const HalfPairing& p);

/// Throw InvalidArgument on a length mismatch between w and p.
bool is_w_pairing(const Word& w, const HalfPairing& p);
bool is_w_admissible(const Word& w, const HalfPairing& p);
/// Block-list overloads; false if the blocks are not a half-pairing.
bool is_w_pairing(const Word& w, const std::vector<Block>& blocks);
bool is_w_admissible(const Word& w, const std::vector<Block>& blocks);

/// The unique w-admissible half-pairing: stack pairing from a good rotation,
/// rotated back. Throws InvalidArgument when w cyclically reduces to 1.
HalfPairing admissible_half_pairing(const Word& w);

/// Stack pairing run from the given good rotation offset, indices rotated
/// back to w. Throws InvalidArgument if r is not a good rotation.
HalfPairing admissible_half_pairing_from(const Word& w, std::size_t r);

/// Letters on the through strings of the admissible half-pairing, in index
/// order. Empty when w is reducible to 1.
Word standard_cyclic_reduction(const Word& w);

/// "1—6, 2—5, |3, |4"
std::string render_ascii(const HalfPairing& p);

// ---------------------------------------------------------------------------
// Dot diagrams: a black dot marks the out-end of a pair; white dots mark
// in-ends and through strings. Encoded as a "B"/"W" string read clockwise
// from point 1.

struct DotDiagram {
  std::string colors;

  int n() const { return static_cast<int>(colors.size()); }
  int black_count() const;
  int white_count() const { return n() - black_count(); }
};

/// Throws InvalidArgument on characters other than 'B'/'W'.
DotDiagram parse_dots(std::string_view text);

DotDiagram to_dots(const HalfPairing& p);

/// Clockwise matching of each black dot to the first free white dot,
/// skipping one white dot per black dot passed. Throws InvalidArgument
/// unless black < white.
HalfPairing from_dots(const DotDiagram& d);

/// All half-pairings of [n] with k through strings, one per dot diagram, in
/// lexicographic order of the black positions. Throws InvalidArgument unless
/// 1 <= k <= n and n - k is even.
std::vector<HalfPairing> enumerate_half_pairings(int n, int k);

}  // namespace ncycle
