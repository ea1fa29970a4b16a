#ifndef REARR_REARRANGE_HPP
#define REARR_REARRANGE_HPP

#include <optional>
#include <span>
#include <vector>

#include "errors.hpp"
#include "sets.hpp"

namespace rearr
{

inline constexpr Nat default_fuel = Nat{1} << 20;

/*
 * sigma_A: the pointwise limit of adjacent swaps at positions a_0 < a_1 < ...
 * taken from A. Point evaluation uses the run structure of A:
 *
 *   x in A                 -> x + 1
 *   x not in A, x-1 in A   -> start of the run of A ending at x-1
 *   otherwise              -> x
 *
 * Upward scans (inverse evaluation) are bounded by fuel.
 */
struct Rearrangement
{
  NatSet base;
  Nat fuel = default_fuel;

  // sigma_A is onto exactly when A is not a tail set; only declared tails
  // are known to break surjectivity.
  bool declared_tail() const { return base.tail_start().has_value(); }
};

Nat sigma_apply(Rearrangement const &r, Nat x);

// Throws NotOnto when y provably has no preimage (declared tail set) and
// FuelExhausted when the run containing y outlasts the fuel.
Nat sigma_inverse_apply(Rearrangement const &r, Nat y);

// One-line array of sigma_(seq) on [0, n): start from the identity and swap
// entries a_k and a_k + 1 in sequence order.
std::vector<Nat> brute_sigma_seq(std::span<Nat const> seq, Nat n);

struct BruteSigma
{
  std::vector<Nat> values;
  Nat stable_prefix;  // entries below this index equal the limit sigma_A
};

BruteSigma brute_sigma_set(NatSet const &a, Nat n);

struct Run
{
  Nat start;
  std::optional<Nat> end;  // empty: the run reaches the scan bound

  bool resolved() const { return end.has_value(); }
  bool operator==(Run const &) const = default;
};

std::vector<Run> runs(NatSet const &a, Nat bound);

// The finitary cycle first -> first+1 -> ... -> last -> first.
struct ConsecutiveCycle
{
  Nat first;
  Nat last;

  Nat apply(Nat x) const
  {
    if (x < first || x > last)
      return x;
    return x == last ? first : x + 1;
  }

  bool operator==(ConsecutiveCycle const &) const = default;
};

struct CycleDecomposition
{
  std::vector<ConsecutiveCycle> cycles;
  std::optional<Nat> unresolved_start;
  Nat bound;

  // Product of the cycles; exact for x outside the unresolved run.
  Nat apply(Nat x) const;
};

CycleDecomposition cycle_decomposition(NatSet const &a, Nat bound);

// Smallest M such that the ordered elements a_M, a_{M+1}, ... within
// [0, bound] are pairwise more than 1 apart. Empty when an adjacent pair
// touches the bound.
std::optional<Nat> is_eventually_commutative(NatSet const &a, Nat bound);

struct InjectivityWitness
{
  Nat index;        // first m with a_m != b_m
  Nat point;        // min(a_m, b_m)
  Nat sigma_a;      // sigma_A(point)
  Nat sigma_b;      // sigma_B(point)
  bool point_in_a;  // true when a_m < b_m
};

InjectivityWitness injectivity_witness(NatSet const &a, NatSet const &b,
                                       Nat bound);

} // namespace rearr

#endif // REARR_REARRANGE_HPP
