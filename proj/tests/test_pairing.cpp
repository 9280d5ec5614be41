#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ncycle/pairing.hpp"
#include "ncycle/reduction.hpp"
#include "ncycle/word.hpp"
#include "oracles.hpp"

using namespace ncycle;

namespace {

Word W(const char* s, int N = 2) { return parse_word(s, N); }

std::vector<int> table_of(const HalfPairing& p) {
  std::vector<int> t;
  for (int i = 1; i <= p.n(); ++i) t.push_back(p.mate(i));
  return t;
}

// Cover relation straight from the definition: scan every ordered pair of
// out-points and check that the open cyclic gap is closed under the pairing.
std::set<std::pair<int, int>> brute_cover(const HalfPairing& p) {
  const int n = p.n();
  std::set<std::pair<int, int>> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      if (p.orientation(i) != Orientation::out || p.orientation(j) != Orientation::out)
        continue;
      std::set<int> gap;
      for (int x = i % n + 1; x != j; x = x % n + 1) gap.insert(x);
      bool closed = true;
      for (int x : gap) closed = closed && !p.is_singleton(x) && gap.count(p.mate(x));
      if (closed) out.insert({i, j});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("is_half_pairing") {
  CHECK(is_half_pairing(6, {{1, 6}, {2, 5}, {3}, {4}}));
  CHECK_FALSE(is_half_pairing(4, {{1, 3}, {2}, {4}}));
  CHECK_FALSE(is_half_pairing(2, {{1, 2}}));
  CHECK_THROWS_AS(is_half_pairing(4, {{1, 3}, {2, 4}, {}}), InvalidArgument);
  CHECK_FALSE(is_half_pairing(3, {{1, 2, 3}}));
  CHECK(is_half_pairing(1, {{1}}));
  CHECK_THROWS_AS(is_half_pairing(3, {{1, 2}}), InvalidArgument);
  CHECK_THROWS_AS(is_half_pairing(3, {{1, 2}, {2, 3}}), InvalidArgument);
  CHECK_THROWS_AS(is_half_pairing(2, {{1}, {3}}), InvalidArgument);
  CHECK_THROWS_AS(HalfPairing::from_blocks(4, {{1, 3}, {2}, {4}}), InvalidArgument);
}

TEST_CASE("is_non_crossing matches the quadruple definition") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 3000; ++t) {
    const int n = 1 + t % 9;
    std::uniform_int_distribution<int> lab(0, 1 + t % 4);
    std::vector<int> label(static_cast<std::size_t>(n));
    for (auto& x : label) x = lab(rng);
    REQUIRE(is_non_crossing(label) == !oracle::crossing(label));
  }
}

TEST_CASE("orientations") {
  auto p = HalfPairing::from_blocks(5, {{1}, {2, 5}, {3, 4}});
  using O = Orientation;
  CHECK(p.orientations() == std::vector<O>{O::out, O::out, O::out, O::in, O::in});
  CHECK(orientations(p) == p.orientations());

  auto all = HalfPairing::from_blocks(3, {{1}, {2}, {3}});
  for (int i = 1; i <= 3; ++i) CHECK(all.orientation(i) == O::out);

  for (int n = 1; n <= 9; ++n) {
    for (int k = 2 - n % 2; k <= n; k += 2) {
      for (const auto& q : enumerate_half_pairings(n, k)) {
        for (int s : q.singletons()) REQUIRE(q.orientation(s) == O::out);
        for (auto [r, s] : q.pairs()) REQUIRE(q.orientation(r) != q.orientation(s));
      }
    }
  }
}

TEST_CASE("cover_relation") {
  auto p = HalfPairing::from_blocks(5, {{1}, {2, 5}, {3, 4}});
  // Hand check: only (1,2) and (2,3) have a gap closed under the pairing.
  CHECK(cover_relation(p) == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});

  auto two = HalfPairing::from_blocks(2, {{1}, {2}});
  CHECK(cover_relation(two) == std::vector<std::pair<int, int>>{{1, 2}, {2, 1}});

  for (int n = 1; n <= 9; ++n) {
    for (int k = 2 - n % 2; k <= n; k += 2) {
      for (const auto& q : enumerate_half_pairings(n, k)) {
        auto got = cover_relation(q);
        REQUIRE(std::set<std::pair<int, int>>(got.begin(), got.end()) == brute_cover(q));
      }
    }
  }
}

TEST_CASE("w-pairings of aaaAA") {
  Word w = W("aaaAA", 1);
  std::vector<std::vector<int>> found;
  for (const auto& t : oracle::brute_half_pairings(5, 1)) {
    if (is_w_pairing(w, HalfPairing::from_partners(t))) found.push_back(t);
  }
  // The single through string sits on one of the three u's.
  REQUIRE(found.size() == 3);
  std::vector<std::vector<Block>> expected = {
      {{1}, {2, 5}, {3, 4}}, {{2}, {1, 5}, {3, 4}}, {{3}, {1, 5}, {2, 4}}};
  for (const auto& blocks : expected) CHECK(is_w_pairing(w, blocks));
  CHECK(is_w_admissible(w, expected[0]));
  CHECK_FALSE(is_w_admissible(w, expected[1]));
  CHECK_FALSE(is_w_admissible(w, expected[2]));
}

TEST_CASE("w-pairing and admissibility of AbBABa") {
  Word w = W("AbBABa");
  std::vector<Block> blocks = {{1, 6}, {2, 5}, {3}, {4}};
  CHECK(is_w_pairing(w, blocks));
  CHECK(is_w_admissible(w, blocks));
  CHECK_FALSE(is_w_pairing(W("ab"), std::vector<Block>{{1, 2}}));
  CHECK(is_w_pairing(W("ab"), std::vector<Block>{{1}, {2}}));
  CHECK_FALSE(is_w_admissible(W("aab"), std::vector<Block>{{1, 2}, {3}}));
  CHECK_THROWS_AS(is_w_pairing(W("abc", 3), HalfPairing::from_blocks(2, {{1}, {2}})),
                  InvalidArgument);
}

TEST_CASE("admissible_half_pairing examples") {
  CHECK(admissible_half_pairing(W("aaaAA", 1)) ==
        HalfPairing::from_blocks(5, {{1}, {2, 5}, {3, 4}}));
  CHECK(admissible_half_pairing(W("AbBABa")) ==
        HalfPairing::from_blocks(6, {{1, 6}, {2, 5}, {3}, {4}}));
  CHECK_THROWS_AS(admissible_half_pairing(W("aA")), InvalidArgument);
  CHECK_THROWS_AS(admissible_half_pairing_from(W("aaaAA", 1), 1), InvalidArgument);
  CHECK(render_ascii(admissible_half_pairing(W("AbBABa"))) == "1—6, 2—5, |3, |4");
}

TEST_CASE("standard_cyclic_reduction") {
  CHECK(to_alpha(standard_cyclic_reduction(W("AbBABa"))) == "BA");
  CHECK(to_alpha(standard_cyclic_reduction(W("aaaAA", 1))) == "a");
  CHECK(standard_cyclic_reduction(W("abBA")).empty());
  CHECK(standard_cyclic_reduction(W("")).empty());

  std::mt19937_64 rng(17);
  for (int t = 0; t < 2000; ++t) {
    Word w = oracle::word_of(oracle::random_word(rng, 1 + t % 15, 2), 2);
    Word hat = standard_cyclic_reduction(w);
    Word c = cyclic_reduce(w);
    REQUIRE(hat.size() == c.size());
    REQUIRE(is_cyclically_reduced(hat));
    bool rot = c.empty();
    for (std::size_t s = 0; s < c.size() && !rot; ++s) rot = c.rotate(s) == hat;
    REQUIRE(rot);
  }
}

TEST_CASE("uniqueness of the admissible half-pairing") {
  for (int N = 1; N <= 2; ++N) {
    const int max_n = 10;
    for (int n = 1; n <= max_n; ++n) {
      std::vector<std::vector<HalfPairing>> by_k(static_cast<std::size_t>(n) + 1);
      for (int k = 2 - n % 2; k <= n; k += 2)
        by_k[static_cast<std::size_t>(k)] = enumerate_half_pairings(n, k);
      oracle::for_each_word(n, N, [&](const oracle::Codes& c) {
        Word w = oracle::word_of(c, N);
        const std::size_t k = cyclic_length(w);
        if (k == 0) return;
        int hits = 0;
        for (const auto& p : by_k[k]) {
          if (is_w_admissible(w, p)) {
            ++hits;
            REQUIRE(p == admissible_half_pairing(w));
          }
        }
        REQUIRE(hits == 1);
      });
    }
  }
}

TEST_CASE("uniqueness on random words of length 10") {
  const auto pool = enumerate_half_pairings(10, 2);
  std::mt19937_64 rng(77);
  int checked = 0;
  while (checked < 300) {
    Word w = oracle::word_of(oracle::random_word(rng, 10, 2), 2);
    if (cyclic_length(w) != 2) continue;
    int hits = 0;
    for (const auto& p : pool) hits += is_w_admissible(w, p);
    REQUIRE(hits == 1);
    ++checked;
  }
}

TEST_CASE("rotation equivariance and construction independence") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 1000; ++t) {
    Word w = oracle::word_of(oracle::random_word(rng, 1 + t % 24, 1 + t % 3), 3);
    if (cyclic_length(w) == 0) continue;
    HalfPairing p = admissible_half_pairing(w);
    const int n = static_cast<int>(w.size());
    for (int r = 0; r < n; ++r) {
      // Point i of w becomes point i - r of the rotation.
      REQUIRE(admissible_half_pairing(w.rotate(static_cast<std::size_t>(r))) ==
              p.rotated(n - r));
    }
    for (std::size_t r : good_rotations(w)) REQUIRE(admissible_half_pairing_from(w, r) == p);
  }
}

TEST_CASE("good rotations start at through strings") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 2000; ++t) {
    Word w = oracle::word_of(oracle::random_word(rng, 1 + t % 20, 2), 2);
    if (cyclic_length(w) == 0) continue;
    HalfPairing p = admissible_half_pairing(w);
    std::vector<std::size_t> from_singletons;
    for (int s : p.singletons()) from_singletons.push_back(static_cast<std::size_t>(s - 1));
    REQUIRE(good_rotations(w) == from_singletons);
  }
}

TEST_CASE("periodic scan of the infinite word agrees") {
  std::mt19937_64 rng(2718);
  int checked = 0;
  while (checked < 1500) {
    const int N = 1 + checked % 3;
    auto c = oracle::random_word(rng, 1 + checked % 18, N);
    Word w = oracle::word_of(c, N);
    if (cyclic_length(w) == 0) continue;
    ReductionProfile prof = reduction_profile(w);
    const std::size_t window = prof.period_start() + w.size();
    REQUIRE(oracle::periodic_scan_pairing(c, window) == table_of(admissible_half_pairing(w)));
    ++checked;
  }
}

TEST_CASE("dot diagrams") {
  auto p = HalfPairing::from_blocks(5, {{1}, {2, 5}, {3, 4}});
  CHECK(to_dots(p).colors == "WBBWW");
  CHECK(from_dots(parse_dots("WBBWW")) == p);
  CHECK(from_dots(parse_dots("WWWW")) ==
        HalfPairing::from_blocks(4, {{1}, {2}, {3}, {4}}));
  CHECK(to_dots(admissible_half_pairing(W("AbBABa"))).colors == "WWWWBB");
  CHECK_THROWS_AS(from_dots(parse_dots("BW")), InvalidArgument);
  CHECK_THROWS_AS(from_dots(parse_dots("")), InvalidArgument);
  CHECK_THROWS_AS(parse_dots("BX"), InvalidArgument);
  CHECK(parse_dots("BWW").black_count() == 1);
  CHECK(parse_dots("BWW").white_count() == 2);
}

TEST_CASE("dot bijection and enumeration counts against brute force") {
  CHECK(enumerate_half_pairings(2, 2).size() == 1);
  CHECK(enumerate_half_pairings(4, 2).size() == 4);
  CHECK(enumerate_half_pairings(6, 2).size() == 15);
  CHECK_THROWS_AS(enumerate_half_pairings(4, 0), InvalidArgument);
  CHECK_THROWS_AS(enumerate_half_pairings(5, 2), InvalidArgument);
  CHECK_THROWS_AS(enumerate_half_pairings(3, 5), InvalidArgument);

  for (int n = 1; n <= 10; ++n) {
    for (int k = 2 - n % 2; k <= n; k += 2) {
      auto all = enumerate_half_pairings(n, k);
      REQUIRE(all.size() == oracle::binomial(n, (n - k) / 2));
      std::set<std::vector<int>> tables;
      std::set<std::string> dots;
      for (const auto& p : all) {
        tables.insert(table_of(p));
        DotDiagram d = to_dots(p);
        REQUIRE(d.black_count() == (n - k) / 2);
        dots.insert(d.colors);
        REQUIRE(from_dots(d) == p);
      }
      REQUIRE(tables.size() == all.size());
      REQUIRE(dots.size() == all.size());
      REQUIRE(tables == oracle::brute_half_pairings(n, k));
    }
  }
}
