#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rearr/rotation.hpp"

using namespace rearr;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace
{

constexpr unsigned wide = 512;

Digits bits(std::string_view s) { return parse_digits(s); }

// Value of a finite expansion whose trailing 1s repeat forever.
cpp_rational tail_value(Digits const &d)
{
  cpp_rational v = 0;
  cpp_rational w(1, 2);
  for (auto x : d) {
    if (x)
      v += w;
    w /= 2;
  }
  if (!d.empty() && d.back() == 1)
    v += w * 2;
  return v;
}

} // namespace

TEST_CASE("digit strings")
{
  CHECK(to_string(bits("0110")) == "0110");
  CHECK(bits("").empty());
  CHECK_THROWS_AS(parse_digits("01a"), ParseError);
}

TEST_CASE("sequence kinds")
{
  CHECK(to_string(BinarySeq::rational(1, 3).prefix(6)) == "010101");
  CHECK(to_string(BinarySeq::rational(3, 4).prefix(4)) == "1100");
  CHECK(to_string(BinarySeq::zero().prefix(3)) == "000");
  CHECK(to_string(BinarySeq::constant_prefix(bits("11")).prefix(4)) == "1100");
  CHECK(BinarySeq::golden().kind() == SeqKind::Golden);
  CHECK_THROWS_AS(BinarySeq::rational(3, 3), Error);

  BinarySeq p = BinarySeq::prng(9);
  CHECK(p.prefix(256) == BinarySeq::prng(9).prefix(256));
  CHECK(p.prefix(256) != BinarySeq::prng(10).prefix(256));
}

TEST_CASE("parse_binary_spec")
{
  CHECK(to_string(parse_binary_spec("zero").prefix(4)) == "0000");
  CHECK(to_string(parse_binary_spec("golden").prefix(8)) == "10011110");
  CHECK(to_string(parse_binary_spec("rational:1/4").prefix(4)) == "0100");
  CHECK(to_string(parse_binary_spec("bits:101").prefix(5)) == "10100");
  CHECK(parse_binary_spec("prng:7").prefix(64) == BinarySeq::prng(7).prefix(64));
  CHECK_THROWS_AS(parse_binary_spec("rational:1"), ParseError);
  CHECK_THROWS_AS(parse_binary_spec("bits:12"), ParseError);
  CHECK_THROWS_AS(parse_binary_spec("pi"), ParseError);
}

TEST_CASE("normalize_tail")
{
  CHECK(normalize_tail(bits("0111")) == bits("1000"));
  CHECK(normalize_tail(bits("10111")) == bits("11000"));
  CHECK(normalize_tail(bits("1010")) == bits("1010"));
  CHECK(normalize_tail(bits("")) == bits(""));
  CHECK_THROWS_AS(normalize_tail(bits("111")), AllOnes);

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    Digits d(1 + rng() % 40);
    for (auto &x : d)
      x = rng() & 1;
    if (std::all_of(d.begin(), d.end(), [](auto x) { return x == 1; }))
      continue;
    Digits once = normalize_tail(d);
    CHECK(once.size() == d.size());
    CHECK(normalize_tail(once) == once);
    CHECK(tail_value(once) == tail_value(d));
  }
}

TEST_CASE("carry_bits")
{
  auto half = BinarySeq::constant_prefix(bits("1"));
  auto quarter = BinarySeq::constant_prefix(bits("01"));
  CHECK(carry_bits(half, half, 1, 64).bits[0] == 0);
  CHECK(carry_bits(quarter, quarter, 1, 64).bits[0] == 1);

  auto third = BinarySeq::rational(1, 3);
  auto two_thirds = BinarySeq::rational(2, 3);
  CarryVerdict stall = try_carry_bits(third, two_thirds, 4, 100);
  CHECK_FALSE(stall.resolved);
  CHECK(stall.resolved_prefix == 0);
  CHECK_THROWS_AS(carry_bits(third, two_thirds, 4, 100), Unresolved);

  try {
    carry_bits(third, two_thirds, 4, 100);
  } catch (Unresolved const &e) {
    CHECK(e.index() == 0);
  }

  SUBCASE("fuel bounds the lookahead")
  {
    // a_k + b_k = 1 on positions 1..9, both 1 at position 10
    auto a = BinarySeq::constant_prefix(bits("01010101011"));
    auto b = BinarySeq::constant_prefix(bits("00101010101"));
    CHECK_FALSE(try_carry_bits(a, b, 1, 9).resolved);
    CarryVerdict v = try_carry_bits(a, b, 1, 10);
    CHECK(v.resolved);
    CHECK(v.bits[0] == 1);
    CHECK(v.lookahead_used == 10);
  }
}

TEST_CASE("carry consistency")
{
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    Digits da(96), db(96);
    for (auto &x : da) x = rng() & 1;
    for (auto &x : db) x = rng() & 1;
    auto a = BinarySeq::constant_prefix(da);
    auto b = BinarySeq::constant_prefix(db);

    CarryVerdict c = carry_bits(a, b, 64, 64);
    Digits f = add_mod1(a, b, 64, 64);
    for (Nat i = 0; i < 64; ++i)
      CHECK(f[i] == (da[i] ^ db[i] ^ c.bits[i]));

    // c_i only looks to the right of i
    Nat i = rng() % 64;
    Digits ea = da, eb = db;
    for (Nat k = 0; k <= i; ++k) {
      ea[k] = rng() & 1;
      eb[k] = rng() & 1;
    }
    CarryVerdict c2 = carry_bits(BinarySeq::constant_prefix(ea),
                                 BinarySeq::constant_prefix(eb), 64, 64);
    CHECK(c2.bits[i] == c.bits[i]);

    // and agrees with the fixed-point sum
    cpp_int x = 0, y = 0;
    for (Nat k = 0; k < 96; ++k) {
      x = (x << 1) | da[k];
      y = (y << 1) | db[k];
    }
    CHECK(f == oracle::fixed_digits(oracle::add_mod1_fixed(x, y, 96), 96, 64));
  }
}

TEST_CASE("add_mod1")
{
  auto quarter = BinarySeq::rational(1, 4);
  CHECK(to_string(add_mod1(quarter, quarter, 4, 64)) == "1000");
  CHECK(to_string(add_mod1(BinarySeq::rational(3, 4), BinarySeq::rational(1, 2), 4, 64)) ==
        "0100");
  CHECK(to_string(add_mod1(BinarySeq::golden(), BinarySeq::golden(), 64, 1024)) ==
        "0011110001101110111100110111001011111110100101001111100000101011");
  CHECK_THROWS_AS(add_mod1(BinarySeq::rational(1, 3), BinarySeq::rational(2, 3), 8, 500),
                  Unresolved);
}

TEST_CASE("add_mod1 agrees with wide fixed-point arithmetic")
{
  std::mt19937_64 rng(43);
  cpp_int beta = oracle::golden_fixed(wide);
  BinarySeq golden = BinarySeq::golden();
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t q = 2 + rng() % 100000;
    std::uint64_t p = rng() % q;
    Digits got = add_mod1(BinarySeq::rational(p, q), golden, 64, 4096);
    cpp_int expected = oracle::add_mod1_fixed(oracle::rational_fixed(p, q, wide), beta, wide);
    CHECK(got == oracle::fixed_digits(expected, wide, 64));
  }

  SUBCASE("rational pairs, wherever the carries settle")
  {
    int resolved = 0;
    for (int trial = 0; trial < 200; ++trial) {
      std::uint64_t q1 = 2 + rng() % 1000, q2 = 2 + rng() % 1000;
      std::uint64_t p1 = rng() % q1, p2 = rng() % q2;
      auto a = BinarySeq::rational(p1, q1);
      auto b = BinarySeq::rational(p2, q2);
      if (!try_carry_bits(a, b, 64, 4096).resolved)
        continue;
      ++resolved;
      // exact sum (p1 q2 + p2 q1) / (q1 q2) mod 1
      std::uint64_t num = (p1 * q2 + p2 * q1) % (q1 * q2);
      Digits expected = BinarySeq::rational(num, q1 * q2).prefix(64);
      CHECK(normalize_tail(add_mod1(a, b, 64, 4096)) == normalize_tail(expected));
    }
    CHECK(resolved > 150);
  }
}

TEST_CASE("golden_beta")
{
  CHECK(to_string(golden_beta(8)) == "10011110");
  CHECK(to_string(golden_beta(1)) == "1");
  CHECK(to_string(golden_beta(64)) ==
        "1001111000110111011110011011100101111111010010100111110000010101");
  CHECK(golden_beta(0).empty());

  Digits d = golden_beta(256);
  auto ones = std::count(d.end() - 64, d.end(), 1);
  CHECK(ones > 0);
  CHECK(ones < 64);

  CHECK(golden_beta(448) == oracle::fixed_digits(oracle::golden_fixed(wide), wide, 448));
  CHECK(BinarySeq::golden().prefix(2000) == golden_beta(2000));
}

TEST_CASE("orbit")
{
  auto zero = BinarySeq::zero();
  auto half = BinarySeq::rational(1, 2);
  auto pts = orbit(zero, half, 3, 4, 64);
  REQUIRE(pts.size() == 3);
  CHECK(to_string(pts[0]) == "0000");
  CHECK(to_string(pts[1]) == "1000");
  CHECK(to_string(pts[2]) == "0000");

  auto g = orbit(zero, BinarySeq::golden(), 3, 8, 1 << 20);
  CHECK(to_string(g[0]) == "00000000");
  CHECK(to_string(g[1]) == "10011110");
  CHECK(to_string(g[2]) == "00111100");

  auto single = orbit(BinarySeq::rational(1, 3), half, 1, 6, 64);
  REQUIRE(single.size() == 1);
  CHECK(to_string(single[0]) == "010101");
  CHECK(orbit(zero, half, 0, 6, 64).empty());

  SUBCASE("matches multiples of beta in fixed point")
  {
    constexpr unsigned bits = 640;
    cpp_int beta = oracle::golden_fixed(bits);
    cpp_int one = cpp_int(1) << bits;
    auto points = orbit(zero, BinarySeq::golden(), 1000, 64, 1 << 20);
    cpp_int x = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      REQUIRE(points[k] == oracle::fixed_digits(x, bits, 64));
      x = oracle::add_mod1_fixed(x, beta, bits);
      CHECK(x < one);
    }
  }

  SUBCASE("a stalled carry names the iteration")
  {
    try {
      orbit(BinarySeq::rational(1, 3), BinarySeq::rational(2, 3), 4, 8, 64);
      FAIL("expected Unresolved");
    } catch (Unresolved const &e) {
      CHECK(e.index() == 1);
    }
  }
}

TEST_CASE("rotating by beta and then by 1 - beta returns to the start")
{
  std::mt19937_64 rng(44);
  int resolved = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::uint64_t q = 3 + rng() % 500, s = 3 + rng() % 500;
    std::uint64_t p = 1 + rng() % (q - 1), r = 1 + rng() % (s - 1);
    auto p0 = BinarySeq::rational(r, s);
    auto there = BinarySeq::sum(p0, BinarySeq::rational(p, q), 4096);
    try {
      Digits back = add_mod1(there, BinarySeq::rational(q - p, q), 64, 4096);
      CHECK(back == p0.prefix(64));
      ++resolved;
    } catch (Unresolved const &) {
    }
  }
  CHECK(resolved > 80);
}

TEST_CASE("sum digits never change once returned")
{
  auto s = BinarySeq::sum(BinarySeq::golden(), BinarySeq::prng(3), 1 << 16);
  Digits first = s.prefix(500);
  CHECK(s.prefix(500) == first);
  CHECK(s.kind() == SeqKind::DerivedSum);
}

TEST_CASE("equidistribution_stat")
{
  std::vector<Digits> uniform;
  for (Nat k = 0; k < 16; ++k) {
    Digits d(4);
    for (Nat i = 0; i < 4; ++i)
      d[i] = (k >> (3 - i)) & 1;
    uniform.push_back(d);
  }
  CHECK(equidistribution_stat(uniform, 16) == Rational(0));
  CHECK(equidistribution_stat(std::vector<Digits>(5, bits("0110")), 2) == Rational(1, 2));
  CHECK_THROWS_AS(equidistribution_stat({bits("01")}, 16), TooFewDigits);
  CHECK_THROWS_AS(equidistribution_stat({}, 2), Error);

  auto points = orbit(BinarySeq::zero(), BinarySeq::golden(), 1000, 64, 1 << 20);
  Rational stat = equidistribution_stat(points, 16);
  CHECK(stat == Rational(3, 2000));
  CHECK(stat <= Rational(3, 100));
}
