#ifndef REARR_ROTATION_HPP
#define REARR_ROTATION_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "sets.hpp"

namespace rearr
{

// Binary digits of a point of [0, 1); digit i has weight 2^-(i+1).
using Digits = std::vector<std::uint8_t>;

std::string to_string(Digits const &d);
Digits parse_digits(std::string_view text);

enum class SeqKind { ConstantPrefix, Rational, Golden, Prng, DerivedSum };

/*
 * A point of [0, 1) as a deterministic digit oracle. Derived sums memoize
 * resolved digits; a digit that has been returned never changes.
 */
class BinarySeq
{
public:
  struct Impl;

  int digit(Nat i) const;
  Digits prefix(Nat n) const;

  SeqKind kind() const;
  std::string const &description() const;

  // The given digits followed by zeros.
  static BinarySeq constant_prefix(Digits digits);
  static BinarySeq zero() { return constant_prefix({}); }
  // p/q with 0 <= p < q.
  static BinarySeq rational(std::uint64_t p, std::uint64_t q);
  // (sqrt(5) - 1) / 2
  static BinarySeq golden();
  static BinarySeq prng(std::uint64_t seed);
  // (a + b) mod 1, digits resolved lazily with the given carry fuel.
  static BinarySeq sum(BinarySeq a, BinarySeq b, Nat fuel);

  explicit BinarySeq(std::shared_ptr<Impl const> impl)
  : _impl(std::move(impl))
  {}

private:
  std::shared_ptr<Impl const> _impl;
};

// "zero" | "golden" | "rational:<p>/<q>" | "bits:<01...>" | "prng:<seed>"
BinarySeq parse_binary_spec(std::string_view text);

/*
 * Rewrites a finite expansion whose trailing run of 1s is read as
 * repeating forever: x 0 1 1 ... 1 becomes x 1 0 0 ... 0 (same length).
 * Inputs ending in 0 come back unchanged. Throws AllOnes for 1 1 ... 1.
 */
Digits normalize_tail(Digits const &digits);

struct CarryVerdict
{
  Digits bits;           // c_0 .. c_{n-1}; meaningful below resolved_prefix
  bool resolved;
  Nat resolved_prefix;   // first unresolved index, n when resolved
  Nat lookahead_used;    // max distance scanned past a position
};

// Carry into each position i < n of a + b: c_i = 1 iff some j > i has
// a_j = b_j = 1 with a_k + b_k = 1 for all i < k < j. Each c_i may look at
// most fuel positions past i.
CarryVerdict try_carry_bits(BinarySeq const &a, BinarySeq const &b,
                            Nat n, Nat fuel);

// As try_carry_bits, throwing Unresolved at the first unsettled index.
CarryVerdict carry_bits(BinarySeq const &a, BinarySeq const &b,
                        Nat n, Nat fuel);

// First n digits of (a + beta) mod 1: f_i = a_i xor b_i xor c_i.
Digits add_mod1(BinarySeq const &a, BinarySeq const &beta, Nat n, Nat fuel);

// First n binary digits of (sqrt(5) - 1) / 2, from an exact integer
// square root with 64 guard bits.
Digits golden_beta(Nat n);

inline constexpr Nat orbit_guard = 8;

// p_0, p_1 = f(p_0), ..., p_{count-1} as n-digit prefixes, where
// f(x) = (x + beta) mod 1. Throws Unresolved carrying the iteration index.
std::vector<Digits> orbit(BinarySeq const &p0, BinarySeq const &beta,
                          Nat count, Nat n, Nat fuel);

// max_k |count_k / N - 1/bins| over bins [k/bins, (k+1)/bins).
Rational equidistribution_stat(std::vector<Digits> const &points, Nat bins);

} // namespace rearr

#endif // REARR_ROTATION_HPP
