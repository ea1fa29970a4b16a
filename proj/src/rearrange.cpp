#include "rearr/rearrange.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace rearr
{

Nat sigma_apply(Rearrangement const &r, Nat x)
{
  NatSet const &a = r.base;

  if (a.contains(x))
    return x + 1;

  if (x == 0 || !a.contains(x - 1))
    return x;

  Nat m = x - 1;
  while (m > 0 && a.contains(m - 1))
    --m;
  return m;
}

Nat sigma_inverse_apply(Rearrangement const &r, Nat y)
{
  NatSet const &a = r.base;

  if (y > 0 && a.contains(y - 1))
    return y - 1;

  if (!a.contains(y))
    return y;

  // y starts a run; its preimage is one past the run end.
  auto tail = a.tail_start();
  Nat n = y;
  for (Nat steps = 0;; ++steps) {
    if (tail && n >= *tail)
      throw NotOnto(y);
    if (!a.contains(n + 1))
      return n + 1;
    if (steps == r.fuel)
      throw FuelExhausted("run end", y, r.fuel);
    ++n;
  }
}

std::vector<Nat> brute_sigma_seq(std::span<Nat const> seq, Nat n)
{
  std::unordered_set<Nat> seen;
  for (Nat a : seq) {
    if (!seen.insert(a).second)
      throw RepeatedEntry("sequence repeats " + std::to_string(a));
    if (a + 2 > n)
      throw BoundTooSmall("array of length " + std::to_string(n) +
                          " cannot swap at " + std::to_string(a));
  }

  std::vector<Nat> line(n);
  std::iota(line.begin(), line.end(), Nat{0});
  for (Nat a : seq)
    std::swap(line[a], line[a + 1]);
  return line;
}

BruteSigma brute_sigma_set(NatSet const &a, Nat n)
{
  if (n == 0)
    throw BoundTooSmall("brute_sigma_set needs n >= 1");

  // Swaps at positions >= n never touch entries below n, so applying
  // A ∩ [0, n-1] on a width n+1 array fixes every entry below n.
  std::vector<Nat> seq = elements_upto(a, n - 1);
  std::vector<Nat> line = brute_sigma_seq(seq, n + 1);
  line.pop_back();
  return {std::move(line), n};
}

std::vector<Run> runs(NatSet const &a, Nat bound)
{
  std::vector<Run> out;
  std::optional<Nat> start;

  for (Nat i = 0; i <= bound; ++i) {
    bool in = a.contains(i);
    if (in && !start)
      start = i;
    if (!in && start) {
      out.push_back({*start, i - 1});
      start.reset();
    }
  }
  if (start)
    out.push_back({*start, std::nullopt});

  return out;
}

Nat CycleDecomposition::apply(Nat x) const
{
  auto it = std::upper_bound(cycles.begin(), cycles.end(), x,
                             [](Nat v, ConsecutiveCycle const &c) {
                               return v < c.first;
                             });
  if (it == cycles.begin())
    return x;
  return std::prev(it)->apply(x);
}

CycleDecomposition cycle_decomposition(NatSet const &a, Nat bound)
{
  CycleDecomposition d{{}, std::nullopt, bound};
  for (Run const &run : runs(a, bound)) {
    if (run.resolved())
      d.cycles.push_back({run.start, *run.end + 1});
    else
      d.unresolved_start = run.start;
  }
  return d;
}

std::optional<Nat> is_eventually_commutative(NatSet const &a, Nat bound)
{
  std::vector<Nat> elems = elements_upto(a, bound);

  std::optional<Nat> last_adjacent;
  for (Nat k = 1; k < elems.size(); ++k) {
    if (elems[k] - elems[k - 1] == 1)
      last_adjacent = k;
  }

  if (!last_adjacent)
    return 0;
  if (elems[*last_adjacent] == bound)
    return std::nullopt;
  return *last_adjacent;
}

InjectivityWitness injectivity_witness(NatSet const &a, NatSet const &b,
                                       Nat bound)
{
  std::vector<Nat> ea = elements_upto(a, bound);
  std::vector<Nat> eb = elements_upto(b, bound);

  auto [ia, ib] = std::mismatch(ea.begin(), ea.end(), eb.begin(), eb.end());
  if (ia == ea.end() && ib == eb.end())
    throw NoDifference("sets agree on [0, " + std::to_string(bound) + "]");

  Nat m = static_cast<Nat>(ia - ea.begin());
  bool point_in_a = ib == eb.end() || (ia != ea.end() && *ia < *ib);
  Nat point = point_in_a ? *ia : *ib;

  return {m, point,
          sigma_apply({a}, point), sigma_apply({b}, point),
          point_in_a};
}

} // namespace rearr
