#include "ncycle/reduction.hpp"

#include <algorithm>

namespace ncycle {

StackReduction stack_reduce(std::span<const Letter> letters) {
  StackReduction out;
  out.partner.assign(letters.size(), std::nullopt);
  std::vector<std::size_t> stack;
  stack.reserve(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!stack.empty() && letters[stack.back()].cancels(letters[i])) {
      out.partner[stack.back()] = i;
      out.partner[i] = stack.back();
      stack.pop_back();
      if (stack.empty()) out.prefix_reducible_to_one = true;
    } else {
      stack.push_back(i);
    }
  }
  out.survivors = std::move(stack);
  return out;
}

Word linear_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter l : w.letters()) {
    if (!stack.empty() && stack.back().cancels(l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(w.alphabet_size(), std::move(stack));
}

Word cyclic_reduce(const Word& w) {
  Word lin = linear_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = lin.size();
  while (hi - lo >= 2 && lin[lo].cancels(lin[hi - 1])) {
    ++lo;
    --hi;
  }
  return lin.substr(lo, hi - lo);
}

std::size_t cyclic_length(const Word& w) { return cyclic_reduce(w).size(); }

bool is_linearly_reduced(std::span<const Letter> letters) {
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (letters[i - 1].cancels(letters[i])) return false;
  }
  return true;
}

bool is_cyclically_reduced(std::span<const Letter> letters) {
  if (!is_linearly_reduced(letters)) return false;
  return letters.size() < 2 || !letters.front().cancels(letters.back());
}

bool is_reducible_to_one(const Word& w) { return linear_reduce(w).empty(); }

bool has_good_reduction(const Word& w) {
  if (w.empty()) {
    throw InvalidArgument("good reduction is undefined for the empty word");
  }
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter l : w.letters()) {
    if (!stack.empty() && stack.back().cancels(l)) {
      stack.pop_back();
      if (stack.empty()) return false;
    } else {
      stack.push_back(l);
    }
  }
  return is_cyclically_reduced(stack);
}

std::vector<std::size_t> good_rotations(const Word& w) {
  if (w.empty()) {
    throw InvalidArgument("good rotations are undefined for the empty word");
  }
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < w.size(); ++r) {
    if (has_good_reduction(w.rotate(r))) out.push_back(r);
  }
  return out;
}

std::optional<std::size_t> first_good_rotation(const Word& w) {
  if (w.empty()) return std::nullopt;
  for (std::size_t r = 0; r < w.size(); ++r) {
    if (has_good_reduction(w.rotate(r))) return r;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// ReductionProfile

std::size_t ReductionProfile::minimum_horizon(std::size_t n, std::size_t k) {
  // ceil(n(1 + n/k)) + n
  return n + (n * n + k - 1) / k + n;
}

std::size_t ReductionProfile::default_horizon(std::size_t n, std::size_t k) {
  // 2 (floor(n(1 + n/k)) + n)
  return 2 * (n + n * n / k + n);
}

ReductionProfile::ReductionProfile(const Word& w, std::size_t horizon)
    : word_(w) {
  if (w.empty()) {
    throw InvalidArgument("reduction profile needs a nonempty word");
  }
  k_ = ncycle::cyclic_length(w);
  if (k_ == 0) {
    throw InvalidArgument(
        "reduction profile needs k >= 1 (word is reducible to 1)");
  }
  const std::size_t n = w.size();
  if (horizon < minimum_horizon(n, k_)) {
    throw InvalidArgument("horizon " + std::to_string(horizon) +
                          " is below the minimum " +
                          std::to_string(minimum_horizon(n, k_)));
  }

  values_.reserve(horizon);
  std::vector<Letter> stack;
  for (std::size_t i = 0; i < horizon; ++i) {
    Letter l = w[i % n];
    if (!stack.empty() && stack.back().cancels(l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
    values_.push_back(stack.size());
  }

  // Walk back from the last comparable index while t_{i+n} = t_i + k.
  std::size_t p = horizon - n + 1;
  while (p > 1 && at(p - 1 + n) == at(p - 1) + k_) --p;
  period_start_ = p;
}

ReductionProfile reduction_profile(const Word& w) {
  const std::size_t k = cyclic_length(w);
  if (w.empty() || k == 0) return ReductionProfile(w, 0);  // throws
  return ReductionProfile(w, ReductionProfile::default_horizon(w.size(), k));
}

ReductionProfile reduction_profile(const Word& w, std::size_t horizon) {
  return ReductionProfile(w, horizon);
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

// Length of the longest nonempty prefix of letters that is reducible to 1,
// or 0 if there is none.
std::size_t longest_trivial_prefix(std::span<const Letter> letters) {
  std::vector<Letter> stack;
  std::size_t best = 0;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!stack.empty() && stack.back().cancels(letters[i])) {
      stack.pop_back();
      if (stack.empty()) best = i + 1;
    } else {
      stack.push_back(letters[i]);
    }
  }
  return best;
}

std::size_t longest_trivial_suffix(std::span<const Letter> letters) {
  std::vector<Letter> reversed(letters.rbegin(), letters.rend());
  return longest_trivial_prefix(reversed);
}

}  // namespace

Decomposition standard_decomposition(const Word& w) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  const auto letters = w.letters();
  bool changed = true;
  while (changed && hi > lo) {
    changed = false;
    if (hi - lo >= 2 && letters[lo].cancels(letters[hi - 1])) {
      ++lo;
      --hi;
      changed = true;
      continue;
    }
    if (std::size_t p = longest_trivial_prefix(letters.subspan(lo, hi - lo))) {
      lo += p;
      changed = true;
      continue;
    }
    if (std::size_t s = longest_trivial_suffix(letters.subspan(lo, hi - lo))) {
      hi -= s;
      changed = true;
    }
  }
  return Decomposition{w.substr(0, lo), w.substr(lo, hi - lo),
                       w.substr(hi, w.size() - hi)};
}

bool is_valid_decomposition(const Word& w, const Decomposition& d) {
  if (!(d.x + d.core + d.y == w)) return false;
  if (!is_reducible_to_one(d.x + d.y)) return false;
  const auto core = d.core.letters();
  Word lin = linear_reduce(d.core);
  if (!is_cyclically_reduced(lin)) return false;
  for (std::size_t len = 1; len <= core.size(); ++len) {
    if (is_reducible_to_one(d.core.substr(0, len))) return false;
    if (is_reducible_to_one(d.core.substr(core.size() - len, len))) {
      return false;
    }
  }
  return true;
}

}  // namespace ncycle
