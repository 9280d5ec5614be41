#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "ncycle/counting.hpp"
#include "ncycle/reduction.hpp"
#include "ncycle/word.hpp"
#include "oracles.hpp"

using namespace ncycle;

namespace {

// Letters at the starts of the good rotations, found by the literal
// definition. This is the standard cyclic reduction.
std::string hat_by_rotations(const oracle::Codes& c, int N) {
  oracle::Codes hat;
  for (std::size_t r = 0; r < c.size(); ++r)
    if (oracle::good_reduction(oracle::rotate(c, r))) hat.push_back(c[r]);
  return to_alpha(oracle::word_of(hat, N));
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t out = 1;
  while (e-- > 0) out *= b;
  return out;
}

}  // namespace

TEST_CASE("s_count") {
  CHECK(s_count(5, 1, 1) == 10);
  CHECK(s_count(6, 2, 2) == 135);
  CHECK(s_count(5, 2, 3) == 0);
  CHECK(s_count(3, 5, 2) == 0);
  CHECK_THROWS_AS(s_count(4, 0, 2), InvalidArgument);
  CHECK_THROWS_AS(s_count(0, 1, 2), InvalidArgument);
  CHECK_THROWS_AS(s_count(3, 1, 0), InvalidArgument);
  for (int N = 1; N <= 5; ++N) {
    for (int n = 1; n <= 30; ++n) {
      CHECK(s_count(n, n, N) == 1);
      if (n >= 3) CHECK(s_count(n, n - 2, N) == BigInt(2 * N - 1) * n);
    }
  }
  // Exact at the top of the supported range.
  CHECK(s_count(64, 2, 26) == power(BigInt(51), 31) * binomial(64, 31));
}

TEST_CASE("kesten_moment") {
  CHECK(kesten_moment(0, 3) == 1);
  CHECK(kesten_moment(1, 2) == 0);
  CHECK(kesten_moment(2, 2) == 4);
  CHECK(kesten_moment(4, 2) == 28);
  CHECK(kesten_moment(6, 2) == 232);
  CHECK(kesten_moment(7, 2) == 0);
  // N = 1: central binomial coefficients.
  for (int m = 0; m <= 15; ++m) CHECK(kesten_moment(2 * m, 1) == binomial(2 * m, m));

  for (int N = 1; N <= 2; ++N) {
    for (int n = 0; n <= (N == 1 ? 14 : 8); ++n) {
      std::uint64_t brute = 0;
      oracle::for_each_word(n, N, [&](const oracle::Codes& c) {
        brute += oracle::reduce(c).empty();
      });
      REQUIRE(kesten_moment(n, N) == brute);
    }
  }
}

TEST_CASE("count_cyclically_reduced") {
  CHECK(count_cyclically_reduced(0, 2) == 1);
  CHECK(count_cyclically_reduced(2, 2) == 12);
  CHECK(count_cyclically_reduced(4, 2) == 84);
  // Spectrum of the non-backtracking matrix: 2N-1 once, 1 N times, -1 N-1 times.
  for (int N = 1; N <= 26; N += 5) {
    for (int k = 1; k <= 60; ++k) {
      BigInt expected = power(BigInt(2 * N - 1), static_cast<unsigned long>(k)) + N +
                        (k % 2 == 0 ? N - 1 : 1 - N);
      REQUIRE(count_cyclically_reduced(k, N) == expected);
    }
  }
  for (int N = 1; N <= 3; ++N) {
    for (int k = 1; k <= (N == 3 ? 6 : 8); ++k) {
      std::uint64_t brute = 0;
      oracle::for_each_word(k, N, [&](const oracle::Codes& c) {
        brute += oracle::cyclically_reduced(c);
      });
      REQUIRE(count_cyclically_reduced(k, N) == brute);
      auto list = cyclically_reduced_words(k, N);
      REQUIRE(list.size() == brute);
      for (const auto& w : list) REQUIRE(is_cyclically_reduced(w));
    }
  }
}

TEST_CASE("census examples") {
  for (int N = 1; N <= 3; ++N) {
    Census c = census(1, N);
    CHECK(c.counts.size() == static_cast<std::size_t>(2 * N));
    for (const auto& [key, count] : c.counts) {
      CHECK(key.size() == 1);
      CHECK(count == 1);
    }
  }
  Census five = census(5, 1);
  std::map<std::string, BigInt> expected = {{"a", 10},   {"A", 10},     {"aaa", 5},
                                            {"AAA", 5},  {"aaaaa", 1},  {"AAAAA", 1}};
  CHECK(five.counts == expected);
  CHECK(five.total() == 32);

  Census four = census(4, 2);
  int length_two = 0;
  for (const auto& [key, count] : four.counts) {
    if (key.size() == 2) {
      ++length_two;
      CHECK(count == s_count(4, 2, 2));
      CHECK(count == 12);
    }
  }
  CHECK(length_two == 12);
  CHECK(four.count("") == 28);
  CHECK(four.count("ab") == 12);
  CHECK(four.count("aA") == 0);
}

TEST_CASE("census matches the good-rotation definition of the reduction") {
  for (int N = 1; N <= 2; ++N) {
    for (int n = 0; n <= (N == 1 ? 9 : 6); ++n) {
      std::map<std::string, BigInt> expected;
      oracle::for_each_word(n, N, [&](const oracle::Codes& c) {
        expected[c.empty() || oracle::cyclic_length(c) == 0 ? "" : hat_by_rotations(c, N)] += 1;
      });
      REQUIRE(census(n, N).counts == expected);
    }
  }
}

TEST_CASE("equal class sizes") {
  for (int N = 1; N <= 2; ++N) {
    for (int n = 1; n <= (N == 1 ? 10 : 8); ++n) {
      Census c = census(n, N);
      REQUIRE(c.total() == BigInt(ipow(2 * static_cast<std::uint64_t>(N), n)));
      for (const auto& [key, count] : c.counts) {
        const int k = static_cast<int>(key.size());
        if (k == 0) {
          REQUIRE(count == kesten_moment(n, N));
        } else {
          REQUIRE(is_cyclically_reduced(parse_word(key, N)));
          REQUIRE(count == s_count(n, k, N));
        }
      }
    }
  }
}

TEST_CASE("verify_x_to_Q") {
  XToQReport r = verify_x_to_Q(4, 2);
  CHECK(r.pass);
  CHECK(r.violations.empty());
  CHECK(r.total == 256);
  std::map<int, std::pair<BigInt, BigInt>> rows;
  for (const auto& row : r.rows) rows[row.k] = {row.classes, row.expected_size};
  CHECK(rows.at(4) == std::make_pair(BigInt(84), BigInt(1)));
  CHECK(rows.at(2) == std::make_pair(BigInt(12), BigInt(12)));
  CHECK(rows.at(0) == std::make_pair(BigInt(1), BigInt(28)));

  XToQReport three = verify_x_to_Q(3, 1);
  CHECK(three.pass);
  CHECK(three.total == 8);

  for (int N = 1; N <= 4; ++N) {
    XToQReport two = verify_x_to_Q(2, N);
    CHECK(two.pass);
    CHECK(two.total == 4 * N * N);
  }
  for (int n = 1; n <= 7; ++n) CHECK(verify_x_to_Q(n, 2).pass);
}

TEST_CASE("column-sum identity") {
  for (int N = 1; N <= 26; N += 5) {
    MomentTable t(N, 40);
    for (int n = 0; n <= 40; ++n) {
      BigInt sum = 0;
      for (int k = 0; k <= n; ++k) sum += count_cyclically_reduced(k, N) * t.at(n, k);
      REQUIRE(sum == power(BigInt(2 * N), static_cast<unsigned long>(n)));
    }
  }
}

TEST_CASE("MomentTable layout and export") {
  MomentTable t(2, 6);
  CHECK(t.at(0, 0) == 1);
  CHECK(t.at(6, 0) == 232);
  CHECK(t.at(6, 2) == 135);
  CHECK(t.at(5, 2) == 0);
  CHECK(t.at(3, 1) == s_count(3, 1, 2));
  CHECK_THROWS(t.at(3, 4));
  CHECK(t.to_csv().find("6,2,135") != std::string::npos);
  CHECK(t.to_json().find("232") != std::string::npos);
}

TEST_CASE("census budget and threads") {
  CHECK_THROWS_AS(census(10, 2, {.budget = 1000, .threads = 1}), BudgetExceeded);
  CHECK_THROWS_AS(census(3, 27), InvalidArgument);
  Census one = census(8, 2, {.budget = 100'000'000, .threads = 1});
  Census four = census(8, 2, {.budget = 100'000'000, .threads = 4});
  CHECK(one.counts == four.counts);
  CHECK(one.to_csv() == four.to_csv());
}
