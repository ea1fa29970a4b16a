#include "rearr/metric.hpp"

namespace rearr
{

std::strong_ordering MetricValue::compare_value(MetricValue const &rhs) const
{
  if (_zero || rhs._zero)
    return rhs._zero <=> _zero;
  // larger exponent, smaller value
  return rhs._exponent <=> _exponent;
}

std::string MetricValue::to_string() const
{
  std::string value;
  if (_zero)
    value = "0";
  else if (_exponent == 0)
    value = "1";
  else if (_exponent < 64)
    value = "1/" + std::to_string(Nat{1} << _exponent);
  else
    value = "2^-" + std::to_string(_exponent);

  if (exact())
    return value + " (exact)";
  return "<= 2^-" + std::to_string(_exponent) + " (agreement bound)";
}

MetricValue rho(Permutation const &sigma, Permutation const &tau, Nat max_depth)
{
  if (structurally_equal(sigma, tau))
    return MetricValue::zero();

  for (Nat j = 0; j <= max_depth; ++j) {
    if (sigma(j) != tau(j))
      return MetricValue::exact_power(j);
  }
  return MetricValue::upper_bound(max_depth + 1);
}

MetricValue dist(Permutation const &sigma, Permutation const &tau, Nat max_depth)
{
  if (!sigma.has_inverse() || !tau.has_inverse())
    throw NoInverse("metric d needs inverse oracles for " +
                    sigma.description() + " and " + tau.description());

  MetricValue forward = rho(sigma, tau, max_depth);
  MetricValue backward = rho(inverse(sigma), inverse(tau), max_depth);

  if (forward.exact() == backward.exact())
    return forward.compare_value(backward) >= 0 ? forward : backward;

  // One exact value e and one bound b: max(e, v) with v <= b is exactly e
  // when e >= b, and otherwise only known to be <= b.
  MetricValue const &e = forward.exact() ? forward : backward;
  MetricValue const &b = forward.exact() ? backward : forward;
  return e.compare_value(b) >= 0 ? e : b;
}

} // namespace rearr
