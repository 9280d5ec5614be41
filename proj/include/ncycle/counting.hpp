#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncycle/bigint.hpp"
#include "ncycle/word.hpp"

namespace ncycle {

/// Raised when an exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of length-n words whose standard cyclic reduction is one fixed
/// cyclically reduced word of length k:
///   (2N-1)^{(n-k)/2} * C(n, (n-k)/2),  and 0 when n-k is odd or k > n.
/// Throws InvalidArgument for k = 0 (see kesten_moment) or n, N < 1.
BigInt s_count(int n, int k, int N);

/// Number of length-n words over 2N letters that are reducible to 1, by
/// dynamic programming over the length of the reduced word.
BigInt kesten_moment(int n, int N);

/// Number of cyclically reduced words of length k (closed non-backtracking
/// walks of length k on the 2N letters). 1 for k = 0.
BigInt count_cyclically_reduced(int k, int N);

/// Every cyclically reduced word of length k over N generators, in
/// lexicographic order of symbol indices.
std::vector<Word> cyclically_reduced_words(int k, int N);

/// Triangle s[n][k], 0 <= k <= n <= n_max, with s[n][0] the Kesten moments
/// and s[0][0] = 1.
class MomentTable {
 public:
  MomentTable(int N, int n_max);

  int alphabet_size() const { return N_; }
  int max_length() const { return static_cast<int>(rows_.size()) - 1; }
  const BigInt& at(int n, int k) const;

  std::string to_csv() const;
  std::string to_json() const;

 private:
  int N_;
  std::vector<std::vector<BigInt>> rows_;
};

struct CensusOptions {
  /// Maximum number of word-steps, (2N)^n * n.
  std::uint64_t budget = 100'000'000;
  unsigned threads = 1;
};

/// Tally of standard cyclic reductions over all (2N)^n words of length n.
/// Keys are the alphabetic strings of the reductions ("" for the identity).
struct Census {
  int alphabet_size = 1;
  int length = 0;
  std::map<std::string, BigInt> counts;

  BigInt count(const std::string& reduced) const;
  BigInt total() const;
  std::string to_csv() const;
  std::string to_json() const;
};

/// Throws BudgetExceeded when (2N)^n * n exceeds the budget, and
/// InvalidArgument when N > 26 (census keys are alphabetic).
Census census(int n, int N, const CensusOptions& options = {});

struct XToQReport {
  int length = 0;
  int alphabet_size = 1;
  bool pass = true;
  std::vector<std::string> violations;
  /// Per reduced length k: how many distinct reduced words occur and the
  /// class size expected for each.
  struct Row {
    int k;
    BigInt classes;
    BigInt expected_size;
  };
  std::vector<Row> rows;
  BigInt total;
};

/// Checks that the census of x^n equals
///   Q_n + s_{n,n-2} Q_{n-2} + ... + (s_{n,0} e  or  s_{n,1} Q_1).
XToQReport verify_x_to_Q(int n, int N, const CensusOptions& options = {});

}  // namespace ncycle
