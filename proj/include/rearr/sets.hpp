#ifndef REARR_SETS_HPP
#define REARR_SETS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "errors.hpp"

namespace rearr
{

class Permutation;

using Rational = boost::rational<std::int64_t>;

enum class SetKind
{
  Finite,
  PeriodicEven,
  PeriodicOdd,
  Tail,
  Prng,
  File,
  Derived
};

std::string to_string(SetKind kind);

/*
 * An immutable subset of the naturals given by a total, pure membership
 * oracle. Copies share the underlying oracle. Two pieces of metadata are
 * tracked where they can be proven from the construction:
 *
 *   finite_limit: every member is < finite_limit
 *   tail_start:   every n >= tail_start is a member
 *
 * Rearrangements rely on tail_start to certify non-surjectivity.
 */
class NatSet
{
public:
  struct Impl;

  NatSet();  // empty set

  bool contains(Nat n) const;
  bool operator()(Nat n) const { return contains(n); }

  SetKind kind() const;
  std::string const &description() const;

  std::optional<Nat> finite_limit() const;
  std::optional<Nat> tail_start() const;

  // Identity of the shared oracle, used for structural comparisons.
  void const *identity() const { return _impl.get(); }

  static NatSet finite(std::set<Nat> elems);
  static NatSet even();
  static NatSet odd();
  static NatSet empty() { return finite({}); }
  static NatSet all() { return tail(0); }
  static NatSet tail(Nat start, std::set<Nat> finite_part = {});
  static NatSet prng(std::uint64_t seed, double p);
  static NatSet from_bits(std::string_view bits, std::string label);
  static NatSet from_file(std::string const &path);

  explicit NatSet(std::shared_ptr<Impl const> impl)
  : _impl(std::move(impl))
  {}

private:
  std::shared_ptr<Impl const> _impl;
};

// Bit i of the result is '1' iff i is in the set.
std::string char_prefix(NatSet const &a, Nat n);

// Members of a that are <= bound, in increasing order.
std::vector<Nat> elements_upto(NatSet const &a, Nat bound);

NatSet complement(NatSet const &a);
NatSet symmetric_difference(NatSet const &a, NatSet const &b);

enum class AdjustMode { Union, Minus };
NatSet finite_adjust(NatSet const &a, std::set<Nat> const &r, AdjustMode mode);

enum class Side { Above, Below };
NatSet restrict(NatSet const &a, Nat r, Side side);

// {sigma(a) : a in A}, evaluated as A(sigma^-1(n)). Throws NoInverse when
// sigma has no inverse oracle.
NatSet image_under(Permutation const &sigma, NatSet const &a);

// Fraction of [0, n) inside a. Requires n >= 1.
Rational density(NatSet const &a, Nat n);

NatSet parse_set_spec(std::string_view text);

} // namespace rearr

#endif // REARR_SETS_HPP
