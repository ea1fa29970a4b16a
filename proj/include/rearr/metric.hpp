#ifndef REARR_METRIC_HPP
#define REARR_METRIC_HPP

#include <compare>
#include <string>

#include "group.hpp"

namespace rearr
{

/*
 * A value of the pointwise-convergence metric: 0 or 2^-exponent
 * (exponent 0 is the value 1). Exact values come from a located first
 * disagreement or structural equality. An UpperBound records agreement on
 * [0, exponent - 1]: the true value is at most 2^-exponent.
 */
class MetricValue
{
public:
  enum class Certainty { Exact, UpperBound };

  static MetricValue zero() { return MetricValue(Certainty::Exact, true, 0); }
  static MetricValue exact_power(Nat j) { return MetricValue(Certainty::Exact, false, j); }
  static MetricValue upper_bound(Nat j) { return MetricValue(Certainty::UpperBound, false, j); }

  Certainty certainty() const { return _certainty; }
  bool exact() const { return _certainty == Certainty::Exact; }
  bool is_zero() const { return _zero; }
  Nat exponent() const { return _exponent; }

  // Value (or bound) on the dyadic scale, ignoring certainty.
  std::strong_ordering compare_value(MetricValue const &rhs) const;

  // Certainly <= 2^-j.
  bool certainly_at_most_power(Nat j) const
  { return _zero || _exponent >= j; }

  // "1/2 (exact)", "2^-70 (exact)", "<= 2^-65 (agreement bound)".
  std::string to_string() const;

  bool operator==(MetricValue const &) const = default;

private:
  MetricValue(Certainty c, bool zero, Nat exponent)
  : _certainty(c), _zero(zero), _exponent(zero ? 0 : exponent)
  {}

  Certainty _certainty;
  bool _zero;
  Nat _exponent;
};

// rho(sigma, tau) scanning indices [0, max_depth].
MetricValue rho(Permutation const &sigma, Permutation const &tau, Nat max_depth);

// max(rho(sigma, tau), rho(sigma^-1, tau^-1)). Throws NoInverse.
MetricValue dist(Permutation const &sigma, Permutation const &tau, Nat max_depth);

} // namespace rearr

#endif // REARR_METRIC_HPP
