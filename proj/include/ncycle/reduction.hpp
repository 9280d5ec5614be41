#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ncycle/word.hpp"

namespace ncycle {

/// Result of the left-to-right stack reduction of a word.
///
/// partner[i] is the index (0-based) of the letter that cancelled l_i, or
/// nullopt if l_i survives. Cancellations happen leftmost-first, which is the
/// same matching obtained by repeatedly removing the first adjacent inverse
/// pair.
struct StackReduction {
  std::vector<std::optional<std::size_t>> partner;
  std::vector<std::size_t> survivors;  // increasing order
  /// True if the stack was empty after some nonempty prefix.
  bool prefix_reducible_to_one = false;
};

StackReduction stack_reduce(std::span<const Letter> letters);

/// The unique linearly reduced word obtained by removing adjacent inverse
/// pairs. Its length is |w|.
Word linear_reduce(const Word& w);

/// Canonical cyclic reduction: linear reduction followed by stripping
/// mutually inverse first/last letters.
Word cyclic_reduce(const Word& w);

/// Length k of any cyclic reduction of w.
std::size_t cyclic_length(const Word& w);

bool is_linearly_reduced(std::span<const Letter> letters);
bool is_cyclically_reduced(std::span<const Letter> letters);
inline bool is_cyclically_reduced(const Word& w) {
  return is_cyclically_reduced(w.letters());
}

bool is_reducible_to_one(const Word& w);

/// No prefix is reducible to 1 and the linear reduction is cyclically
/// reduced. Throws InvalidArgument for the empty word.
bool has_good_reduction(const Word& w);

/// Offsets r in [0, n) whose rotation l_{r+1}..l_n l_1..l_r has good
/// reduction, in increasing order. There are exactly cyclic_length(w) of
/// them. Throws InvalidArgument for the empty word.
std::vector<std::size_t> good_rotations(const Word& w);

/// Smallest good rotation, or nullopt when k = 0.
std::optional<std::size_t> first_good_rotation(const Word& w);

/// Lengths t_1, t_2, ... of the linear reductions of the prefixes of the
/// infinite periodic word w w w ...
class ReductionProfile {
 public:
  /// Throws InvalidArgument if w is empty, k = 0, or the horizon is shorter
  /// than minimum_horizon(w).
  ReductionProfile(const Word& w, std::size_t horizon);

  static std::size_t minimum_horizon(std::size_t n, std::size_t k);
  static std::size_t default_horizon(std::size_t n, std::size_t k);

  const Word& word() const { return word_; }
  std::size_t cyclic_length() const { return k_; }
  std::size_t horizon() const { return values_.size(); }

  /// t_i for 1 <= i <= horizon.
  std::size_t at(std::size_t i) const { return values_.at(i - 1); }
  const std::vector<std::size_t>& values() const { return values_; }

  /// Least index p such that t_{i+n} = t_i + k for every i >= p with
  /// i + n <= horizon.
  std::size_t period_start() const { return period_start_; }

  /// period_start + n - 1: every t_j with j past this index is the
  /// k-translate of t_{j-n}. This is where a plot of the profile visibly
  /// turns periodic (10 for "aaAbbBAA").
  std::size_t periodic_after() const { return period_start_ + word_.size() - 1; }

 private:
  Word word_;
  std::size_t k_ = 0;
  std::vector<std::size_t> values_;
  std::size_t period_start_ = 1;
};

ReductionProfile reduction_profile(const Word& w);
ReductionProfile reduction_profile(const Word& w, std::size_t horizon);

/// w = x · core · y with x·y reducible to 1 and the linear reduction of the
/// core cyclically reduced.
struct Decomposition {
  Word x;
  Word core;
  Word y;
};

/// Peels the word from the outside in: cancelling end letters first, then a
/// maximal prefix reducible to 1, then a maximal suffix reducible to 1,
/// until none applies.
Decomposition standard_decomposition(const Word& w);

/// Checks every Decomposition invariant against the original word.
bool is_valid_decomposition(const Word& w, const Decomposition& d);

}  // namespace ncycle
