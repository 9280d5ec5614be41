#include "ncycle/counting.hpp"

#include <algorithm>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "ncycle/pairing.hpp"
#include "ncycle/reduction.hpp"

namespace ncycle {

BigInt binomial(long n, long r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt out = 1;
  for (long i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;
  }
  return out;
}

BigInt power(const BigInt& base, unsigned long exp) {
  BigInt out = 1;
  for (unsigned long i = 0; i < exp; ++i) out *= base;
  return out;
}

BigInt s_count(int n, int k, int N) {
  if (n < 1 || N < 1) throw InvalidArgument("s_count needs n >= 1 and N >= 1");
  if (k == 0) {
    throw InvalidArgument("s_count is not defined for k = 0; use kesten_moment");
  }
  if (k < 0) throw InvalidArgument("s_count needs k >= 1");
  if (k > n || (n - k) % 2 != 0) return 0;
  const int half = (n - k) / 2;
  return power(2 * N - 1, static_cast<unsigned long>(half)) * binomial(n, half);
}

BigInt kesten_moment(int n, int N) {
  if (n < 0 || N < 1) throw InvalidArgument("kesten_moment needs n >= 0, N >= 1");
  // ways[l] = number of prefixes whose linear reduction has length l.
  std::vector<BigInt> ways(static_cast<std::size_t>(n) + 2, 0);
  ways[0] = 1;
  for (int step = 0; step < n; ++step) {
    std::vector<BigInt> next(ways.size(), 0);
    for (std::size_t l = 0; l + 1 < ways.size(); ++l) {
      if (ways[l] == 0) continue;
      if (l == 0) {
        next[1] += ways[0] * (2 * N);
      } else {
        next[l + 1] += ways[l] * (2 * N - 1);
        next[l - 1] += ways[l];
      }
    }
    ways = std::move(next);
  }
  return ways[0];
}

BigInt count_cyclically_reduced(int k, int N) {
  if (k < 0 || N < 1) throw InvalidArgument("need k >= 0 and N >= 1");
  if (k == 0) return 1;
  const std::size_t s = 2 * static_cast<std::size_t>(N);
  // Closed non-backtracking walks: trace of A^k where symbol t may follow
  // symbol u unless t = u^{-1}. Every diagonal entry is the same by symmetry,
  // so propagate a single row of A^k.
  std::vector<BigInt> row(s, 0);
  row[0] = 1;
  for (int step = 0; step < k; ++step) {
    BigInt total = 0;
    for (const auto& x : row) total += x;
    std::vector<BigInt> next(s);
    for (std::size_t t = 0; t < s; ++t) next[t] = total - row[t ^ 1];
    row = std::move(next);
  }
  return row[0] * s;
}

std::vector<Word> cyclically_reduced_words(int k, int N) {
  if (k < 0 || N < 1) throw InvalidArgument("need k >= 0 and N >= 1");
  std::vector<Word> out;
  const int radix = 2 * N;
  std::vector<int> digits(static_cast<std::size_t>(k), 0);
  std::vector<Letter> letters(static_cast<std::size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) letters[i] = Letter::from_symbol_index(digits[i]);
    if (is_cyclically_reduced(letters)) out.emplace_back(N, letters);
    int i = k - 1;
    while (i >= 0 && ++digits[i] == radix) digits[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// MomentTable

MomentTable::MomentTable(int N, int n_max) : N_(N) {
  if (N < 1 || n_max < 0) throw InvalidArgument("need N >= 1 and n_max >= 0");
  rows_.resize(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    auto& row = rows_[static_cast<std::size_t>(n)];
    row.resize(static_cast<std::size_t>(n) + 1);
    row[0] = kesten_moment(n, N);
    for (int k = 1; k <= n; ++k) row[static_cast<std::size_t>(k)] = s_count(n, k, N);
  }
}

const BigInt& MomentTable::at(int n, int k) const {
  if (n < 0 || n > max_length() || k < 0 || k > n) {
    throw InvalidArgument("moment table index out of range");
  }
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

std::string MomentTable::to_csv() const {
  std::ostringstream os;
  os << "n,k,s\n";
  for (int n = 0; n <= max_length(); ++n)
    for (int k = 0; k <= n; ++k) os << n << ',' << k << ',' << at(n, k) << '\n';
  return os.str();
}

std::string MomentTable::to_json() const {
  nlohmann::json j;
  j["gens"] = N_;
  j["rows"] = nlohmann::json::array();
  for (int n = 0; n <= max_length(); ++n) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k <= n; ++k) row.push_back(at(n, k).str());
    j["rows"].push_back(row);
  }
  return j.dump();
}

// ---------------------------------------------------------------------------
// Census

BigInt Census::count(const std::string& reduced) const {
  auto it = counts.find(reduced);
  return it == counts.end() ? BigInt(0) : it->second;
}

BigInt Census::total() const {
  BigInt t = 0;
  for (const auto& [key, c] : counts) t += c;
  return t;
}

std::string Census::to_csv() const {
  std::ostringstream os;
  os << "reduction,length,count\n";
  for (const auto& [key, c] : counts) {
    os << key << ',' << key.size() << ',' << c << '\n';
  }
  return os.str();
}

std::string Census::to_json() const {
  nlohmann::json j;
  j["gens"] = alphabet_size;
  j["length"] = length;
  j["counts"] = nlohmann::json::object();
  for (const auto& [key, c] : counts) j["counts"][key] = c.str();
  j["total"] = total().str();
  return j.dump();
}

namespace {

using LocalCounts = std::map<std::string, std::uint64_t>;

// Tallies words with mixed-radix index in [begin, end).
LocalCounts census_range(int n, int N, std::uint64_t begin, std::uint64_t end) {
  LocalCounts counts;
  const auto radix = static_cast<std::uint64_t>(2 * N);
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  std::uint64_t rest = begin;
  for (int i = n - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<int>(rest % radix);
    rest /= radix;
  }
  std::vector<Letter> letters(static_cast<std::size_t>(n));
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    for (int i = 0; i < n; ++i) {
      letters[static_cast<std::size_t>(i)] =
          Letter::from_symbol_index(digits[static_cast<std::size_t>(i)]);
    }
    Word w(N, letters);
    ++counts[to_alpha(standard_cyclic_reduction(w))];
    for (int i = n - 1; i >= 0; --i) {
      auto& d = digits[static_cast<std::size_t>(i)];
      if (++d < static_cast<int>(radix)) break;
      d = 0;
    }
  }
  return counts;
}

}  // namespace

Census census(int n, int N, const CensusOptions& options) {
  if (n < 0 || N < 1) throw InvalidArgument("census needs n >= 0 and N >= 1");
  if (N > 26) throw InvalidArgument("census keys need N <= 26");
  const BigInt words = power(2 * N, static_cast<unsigned long>(n));
  const BigInt steps = words * std::max(n, 1);
  if (steps > options.budget) {
    throw BudgetExceeded("census(" + std::to_string(n) + ", " +
                         std::to_string(N) + ") needs " + steps.str() +
                         " word-steps, budget is " +
                         std::to_string(options.budget));
  }
  const auto total = words.convert_to<std::uint64_t>();
  const unsigned threads =
      static_cast<unsigned>(std::max<std::uint64_t>(
          1, std::min<std::uint64_t>(options.threads, total)));

  std::vector<LocalCounts> partial(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = total * t / threads;
    const std::uint64_t end = total * (t + 1) / threads;
    if (threads == 1) {
      partial[t] = census_range(n, N, begin, end);
    } else {
      pool.emplace_back([&, t, begin, end] {
        partial[t] = census_range(n, N, begin, end);
      });
    }
  }
  for (auto& th : pool) th.join();

  Census out;
  out.alphabet_size = N;
  out.length = n;
  for (const auto& part : partial) {
    for (const auto& [key, c] : part) out.counts[key] += c;
  }
  return out;
}

XToQReport verify_x_to_Q(int n, int N, const CensusOptions& options) {
  Census c = census(n, N, options);
  XToQReport report;
  report.length = n;
  report.alphabet_size = N;
  report.total = c.total();

  auto fail = [&](std::string msg) {
    report.pass = false;
    report.violations.push_back(std::move(msg));
  };

  std::map<std::string, BigInt> unexplained = c.counts;
  for (int k = n; k >= 0; k -= 2) {
    BigInt expected;
    if (k == 0) {
      expected = kesten_moment(n, N);
    } else {
      expected = s_count(n, k, N);
    }
    XToQReport::Row row{k, 0, expected};
    for (const Word& v : cyclically_reduced_words(k, N)) {
      const std::string key = to_alpha(v);
      const BigInt got = c.count(key);
      if (got != expected) {
        fail("class \"" + key + "\" has " + got.str() + " words, expected " +
             expected.str());
      }
      if (got != 0) ++row.classes;
      unexplained.erase(key);
    }
    report.rows.push_back(row);
  }
  for (const auto& [key, count] : unexplained) {
    fail("unexpected class \"" + key + "\" with " + count.str() + " words");
  }
  const BigInt expected_total = power(2 * N, static_cast<unsigned long>(n));
  if (report.total != expected_total) {
    fail("total " + report.total.str() + " differs from (2N)^n = " +
         expected_total.str());
  }
  return report;
}

}  // namespace ncycle
