#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "rearr/group.hpp"
#include "rearr/rearrange.hpp"

using namespace rearr;

namespace
{

std::vector<Nat> seq(std::initializer_list<Nat> v) { return v; }

std::vector<Nat> line_of(FinitaryPermutation const &p, Nat n) { return p.one_line(n); }

// sigma_(a_0) ∘ sigma_(a_1) ∘ ... ∘ sigma_(a_n)
FinitaryPermutation product(std::vector<Nat> const &s)
{
  FinitaryPermutation p;
  for (Nat a : s)
    p = compose(p, adjacent_transposition(a));
  return p;
}

std::vector<Nat> sorted_sample(std::mt19937_64 &rng, Nat limit, std::size_t count)
{
  std::set<Nat> s;
  std::uniform_int_distribution<Nat> pick(0, limit - 1);
  while (s.size() < count)
    s.insert(pick(rng));
  return {s.begin(), s.end()};
}

} // namespace

TEST_CASE("brute_sigma_seq listings")
{
  CHECK(brute_sigma_seq(seq({0, 1}), 6) == seq({1, 2, 0, 3, 4, 5}));
  CHECK(brute_sigma_seq(seq({4, 5, 6}), 10) == seq({0, 1, 2, 3, 5, 6, 7, 4, 8, 9}));
  CHECK(brute_sigma_seq(seq({1, 0}), 4) == seq({2, 0, 1, 3}));
  CHECK(brute_sigma_seq(seq({}), 3) == seq({0, 1, 2}));

  CHECK_THROWS_AS(brute_sigma_seq(seq({2, 2}), 6), RepeatedEntry);
  CHECK_THROWS_AS(brute_sigma_seq(seq({4}), 5), BoundTooSmall);
  CHECK_NOTHROW(brute_sigma_seq(seq({4}), 6));
}

TEST_CASE("brute_sigma_set listings")
{
  CHECK(brute_sigma_set(NatSet::even(), 8).values == seq({1, 0, 3, 2, 5, 4, 7, 6}));
  CHECK(brute_sigma_set(NatSet::odd(), 9).values == seq({0, 2, 1, 4, 3, 6, 5, 8, 7}));
  CHECK(brute_sigma_set(NatSet::all(), 6).values == seq({1, 2, 3, 4, 5, 6}));
  CHECK(brute_sigma_set(NatSet::empty(), 4).values == seq({0, 1, 2, 3}));
  CHECK(brute_sigma_set(NatSet::even(), 8).stable_prefix == Nat{8});
}

TEST_CASE("sigma_apply")
{
  Rearrangement r01{NatSet::finite({0, 1})};
  CHECK(sigma_apply(r01, 2) == 0);
  CHECK(sigma_apply(r01, 0) == 1);
  CHECK(sigma_apply(r01, 3) == 3);
  CHECK(sigma_apply(Rearrangement{NatSet::all()}, 1000000) == 1000001);
  CHECK(sigma_apply(Rearrangement{NatSet::finite({4, 5, 6})}, 7) == 4);
  CHECK(sigma_apply(Rearrangement{NatSet::empty()}, 9) == 9);
}

TEST_CASE("sigma_inverse_apply")
{
  CHECK(sigma_inverse_apply(Rearrangement{NatSet::even()}, 0) == 1);
  CHECK(sigma_inverse_apply(Rearrangement{NatSet::finite({0, 1})}, 0) == 2);
  CHECK(sigma_inverse_apply(Rearrangement{NatSet::finite({4, 5, 6})}, 4) == 7);
  CHECK(sigma_inverse_apply(Rearrangement{NatSet::finite({4, 5, 6})}, 5) == 4);

  SUBCASE("declared tails have no preimage at the run start")
  {
    CHECK_THROWS_AS(sigma_inverse_apply(Rearrangement{NatSet::all()}, 0), NotOnto);
    CHECK_THROWS_AS(sigma_inverse_apply(Rearrangement{NatSet::tail(5)}, 5), NotOnto);
    CHECK(sigma_inverse_apply(Rearrangement{NatSet::tail(5)}, 6) == 5);
    CHECK(sigma_inverse_apply(Rearrangement{NatSet::tail(5)}, 3) == 3);
  }

  SUBCASE("long runs on undeclared sets exhaust the fuel")
  {
    NatSet hidden = NatSet::from_bits(std::string(300, '1'), "ones");
    CHECK_THROWS_AS(sigma_inverse_apply(Rearrangement{hidden, 100}, 0), FuelExhausted);
    CHECK(sigma_inverse_apply(Rearrangement{hidden, 1000}, 0) == 300);
  }
}

TEST_CASE("runs")
{
  CHECK(runs(NatSet::finite({4, 5, 6}), 20) == std::vector<Run>{{4, 6}});
  CHECK(runs(NatSet::even(), 7) ==
        std::vector<Run>{{0, 0}, {2, 2}, {4, 4}, {6, 6}});
  CHECK(runs(NatSet::tail(3), 10) == std::vector<Run>{{3, std::nullopt}});
  CHECK(runs(NatSet::empty(), 10).empty());

  SUBCASE("run invariants")
  {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
      NatSet a = NatSet::prng(rng(), 0.6);
      Nat bound = 200;
      auto rs = runs(a, bound);
      for (Run const &r : rs) {
        CHECK(a.contains(r.start));
        CHECK((r.start == 0 || !a.contains(r.start - 1)));
        if (r.resolved()) {
          CHECK(r.start <= *r.end);
          CHECK_FALSE(a.contains(*r.end + 1));
          for (Nat x = r.start; x <= *r.end; ++x)
            CHECK(a.contains(x));
        }
      }
    }
  }
}

TEST_CASE("cycle_decomposition")
{
  auto even = cycle_decomposition(NatSet::even(), 8);
  CHECK(even.cycles == std::vector<ConsecutiveCycle>{{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  CHECK(even.unresolved_start == Nat{8});  // 8 is a member touching the bound

  auto block = cycle_decomposition(NatSet::finite({4, 5, 6}), 10);
  REQUIRE(block.cycles.size() == 1);
  ConsecutiveCycle c = block.cycles[0];
  CHECK(c.apply(4) == 5);
  CHECK(c.apply(5) == 6);
  CHECK(c.apply(6) == 7);
  CHECK(c.apply(7) == 4);

  CHECK(cycle_decomposition(NatSet::empty(), 10).cycles.empty());
  CHECK(cycle_decomposition(NatSet::tail(3), 10).unresolved_start == Nat{3});

  SUBCASE("reproduces sigma_apply and is increasing and disconnected")
  {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      NatSet a = NatSet::prng(rng(), 0.5);
      Nat bound = 300;
      auto d = cycle_decomposition(a, bound);
      Rearrangement r{a};
      Nat limit = d.unresolved_start ? *d.unresolved_start : bound;
      for (Nat x = 0; x < limit; ++x)
        CHECK(d.apply(x) == sigma_apply(r, x));
      for (std::size_t i = 1; i < d.cycles.size(); ++i)
        CHECK(d.cycles[i].first > d.cycles[i - 1].last);
    }
  }
}

TEST_CASE("is_eventually_commutative")
{
  CHECK(is_eventually_commutative(NatSet::even(), 100) == Nat{0});
  NatSet mixed = finite_adjust(restrict(NatSet::even(), 3, Side::Above), {0, 1},
                               AdjustMode::Union);
  CHECK(is_eventually_commutative(mixed, 100) == Nat{1});
  CHECK_FALSE(is_eventually_commutative(NatSet::all(), 100));
  CHECK(is_eventually_commutative(NatSet::empty(), 100) == Nat{0});
}

TEST_CASE("injectivity_witness")
{
  auto w = injectivity_witness(NatSet::tail(0), NatSet::tail(1), 50);
  CHECK(w.point == 0);
  CHECK(w.sigma_a == 1);
  CHECK(w.sigma_b == 0);

  auto eo = injectivity_witness(NatSet::even(), NatSet::odd(), 50);
  CHECK(eo.index == 0);
  CHECK(eo.point == 0);
  CHECK(eo.sigma_a == 1);
  CHECK(eo.sigma_b == 0);
  CHECK(eo.point_in_a);

  CHECK_THROWS_AS(injectivity_witness(NatSet::even(), NatSet::even(), 50), NoDifference);

  SUBCASE("random pairs")
  {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
      NatSet a = NatSet::prng(rng(), 0.5);
      NatSet b = NatSet::prng(rng(), 0.5);
      auto v = injectivity_witness(a, b, 200);
      NatSet const &in = v.point_in_a ? a : b;
      NatSet const &out = v.point_in_a ? b : a;
      Nat s_in = v.point_in_a ? v.sigma_a : v.sigma_b;
      Nat s_out = v.point_in_a ? v.sigma_b : v.sigma_a;
      CHECK(in.contains(v.point));
      CHECK_FALSE(out.contains(v.point));
      CHECK(s_in == v.point + 1);
      CHECK(s_out <= v.point);
      CHECK(sigma_apply(Rearrangement{a}, v.point) == v.sigma_a);
      CHECK(sigma_apply(Rearrangement{b}, v.point) == v.sigma_b);
    }
  }
}

TEST_CASE("closed form agrees with the brute-force limit")
{
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 500; ++trial) {
    NatSet a = NatSet::finite(oracle::random_finite(rng, 128, 0.5));
    Rearrangement r{a};
    BruteSigma b = brute_sigma_set(a, 256);
    for (Nat i = 0; i < b.stable_prefix; ++i) {
      REQUIRE(sigma_apply(r, i) == b.values[i]);
      REQUIRE(sigma_inverse_apply(r, b.values[i]) == i);
    }
  }
}

TEST_CASE("inverse round trip on non-tail sets")
{
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 20; ++trial) {
    Rearrangement r{NatSet::prng(rng(), 0.5)};
    for (Nat x = 0; x <= 1000; ++x) {
      REQUIRE(sigma_inverse_apply(r, sigma_apply(r, x)) == x);
      REQUIRE(sigma_apply(r, sigma_inverse_apply(r, x)) == x);
    }
  }
}

TEST_CASE("non-tail sets are onto")
{
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    Rearrangement r{NatSet::prng(rng(), 0.7)};
    for (Nat y = 0; y <= 200; ++y)
      CHECK_NOTHROW(sigma_inverse_apply(r, y));
  }
  for (Nat n : {0, 5, 40})
    CHECK_THROWS_AS(sigma_inverse_apply(Rearrangement{NatSet::tail(n)}, n), NotOnto);
}

TEST_CASE("adjacent swaps more than one apart commute")
{
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Nat> pick(0, 250);
  for (int trial = 0; trial < 100; ++trial) {
    Nat x = pick(rng), y = pick(rng);
    if ((x > y ? x - y : y - x) <= 1)
      continue;
    CHECK(brute_sigma_seq(seq({x, y}), 256) == brute_sigma_seq(seq({y, x}), 256));
  }
}

TEST_CASE("increasing sequences are products of adjacent swaps")
{
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t len = std::uniform_int_distribution<std::size_t>(1, 16)(rng);
    auto s = sorted_sample(rng, 254, len);
    CHECK(brute_sigma_seq(s, 256) == line_of(product(s), 256));
  }
}

TEST_CASE("sparse sequences are order independent")
{
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto sparse = oracle::random_sparse(rng, 254, 0.3);
    std::vector<Nat> s(sparse.begin(), sparse.end());
    auto expected = brute_sigma_seq(s, 256);
    for (int shuffle = 0; shuffle < 20; ++shuffle) {
      std::shuffle(s.begin(), s.end(), rng);
      CHECK(brute_sigma_seq(s, 256) == expected);
    }
  }
}

TEST_CASE("descending pairs more than one apart")
{
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<Nat> pick(0, 254);
  int checked = 0;
  while (checked < 100) {
    Nat x = pick(rng), y = pick(rng);
    if (x <= y + 1)
      continue;
    ++checked;
    CHECK(brute_sigma_seq(seq({x, y}), 256) ==
          line_of(compose(adjacent_transposition(y), adjacent_transposition(x)), 256));
  }
}

TEST_CASE("adjacent pairs do not commute")
{
  for (Nat k = 0; k <= 64; ++k) {
    auto lhs = line_of(compose(adjacent_transposition(k), adjacent_transposition(k + 1)), 256);
    auto rhs = brute_sigma_seq(seq({k + 1, k}), 256);
    CHECK(lhs != rhs);
    CHECK(lhs == brute_sigma_seq(seq({k, k + 1}), 256));
  }

  SUBCASE("rows at k = 0, 5, 17")
  {
    for (Nat k : {0, 5, 17}) {
      auto fwd = compose(adjacent_transposition(k), adjacent_transposition(k + 1));
      auto rev = brute_sigma_seq(seq({k + 1, k}), k + 3);
      CHECK(fwd(k) == k + 1);
      CHECK(fwd(k + 1) == k + 2);
      CHECK(fwd(k + 2) == k);
      CHECK(rev[k] == k + 2);
      CHECK(rev[k + 1] == k);
      CHECK(rev[k + 2] == k + 1);
    }
  }
}

TEST_CASE("sparse sets square to the identity")
{
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    NatSet a = NatSet::finite(oracle::random_sparse(rng, 1024, 0.4));
    REQUIRE(is_eventually_commutative(a, 1024) == Nat{0});
    Rearrangement r{a};
    for (Nat x = 0; x < 1024; ++x)
      REQUIRE(sigma_apply(r, sigma_apply(r, x)) == x);
  }

  SUBCASE("beyond the commutative index")
  {
    NatSet a = finite_adjust(restrict(NatSet::even(), 3, Side::Above), {0, 1},
                             AdjustMode::Union);
    auto m = is_eventually_commutative(a, 200);
    REQUIRE(m == Nat{1});
    Rearrangement r{a};
    // a_1 = 1, so everything from 3 on squares to itself
    for (Nat x = 3; x <= 200; ++x)
      CHECK(sigma_apply(r, sigma_apply(r, x)) == x);
  }
}
