#include "rearr/group.hpp"

#include <algorithm>
#include <iterator>
#include <unordered_set>

namespace rearr
{

namespace
{

// Completes a partial injection to a bijection of its domain ∪ range:
// points with an image but no preimage receive, in ascending order, the
// points with a preimage but no image.
FinitaryPermutation close_partial(std::map<Nat, Nat> partial)
{
  std::set<Nat> values;
  for (auto const &[x, y] : partial)
    values.insert(y);

  std::vector<Nat> need_image, need_preimage;
  for (Nat y : values) {
    if (partial.count(y) == 0)
      need_image.push_back(y);
  }
  for (auto const &[x, y] : partial) {
    if (values.count(x) == 0)
      need_preimage.push_back(x);
  }

  for (std::size_t i = 0; i < need_image.size(); ++i)
    partial[need_image[i]] = need_preimage[i];

  return FinitaryPermutation::from_map(partial);
}

} // anonymous namespace

FinitaryPermutation FinitaryPermutation::from_map(std::map<Nat, Nat> const &mapping)
{
  FinitaryPermutation p;
  std::set<Nat> values;

  for (auto const &[x, y] : mapping) {
    if (!values.insert(y).second)
      throw Error("finitary map is not injective at value " + std::to_string(y));
    if (x != y) {
      p._forward.emplace(x, y);
      p._inverse.emplace(y, x);
    }
  }

  for (Nat y : values) {
    if (mapping.count(y) == 0)
      throw Error("finitary map is not a bijection of its domain: " +
                  std::to_string(y) + " has no image");
  }

  return p;
}

Nat FinitaryPermutation::operator()(Nat x) const
{
  auto it = _forward.find(x);
  return it == _forward.end() ? x : it->second;
}

Nat FinitaryPermutation::apply_inverse(Nat y) const
{
  auto it = _inverse.find(y);
  return it == _inverse.end() ? y : it->second;
}

FinitaryPermutation FinitaryPermutation::inverse() const
{
  FinitaryPermutation p;
  p._forward = _inverse;
  p._inverse = _forward;
  return p;
}

std::set<Nat> FinitaryPermutation::support() const
{
  std::set<Nat> s;
  for (auto const &[x, y] : _forward)
    s.insert(x);
  return s;
}

std::vector<Nat> FinitaryPermutation::one_line(Nat n) const
{
  std::vector<Nat> line(n);
  for (Nat i = 0; i < n; ++i)
    line[i] = (*this)(i);
  return line;
}

std::vector<std::pair<Nat, Nat>> FinitaryPermutation::transpositions() const
{
  std::vector<std::pair<Nat, Nat>> out;
  std::set<Nat> seen;

  for (auto const &[start, unused] : _forward) {
    if (seen.count(start))
      continue;

    // (c0 c1 ... ck) = (c0 ck) ∘ ... ∘ (c0 c1)
    std::vector<Nat> cycle;
    for (Nat x = start; seen.insert(x).second; x = (*this)(x))
      cycle.push_back(x);
    for (std::size_t i = cycle.size() - 1; i >= 1; --i)
      out.emplace_back(cycle[0], cycle[i]);
  }

  return out;
}

nlohmann::json FinitaryPermutation::to_json() const
{
  nlohmann::json map = nlohmann::json::object();
  for (auto const &[x, y] : _forward)
    map[std::to_string(x)] = y;
  return {{"map", map}};
}

FinitaryPermutation FinitaryPermutation::from_json(nlohmann::json const &j)
{
  std::map<Nat, Nat> mapping;
  for (auto const &[key, value] : j.at("map").items()) {
    std::size_t used = 0;
    Nat x = std::stoull(key, &used);
    if (used != key.size())
      throw ParseError("finitary map key '" + key + "' is not a natural", used);
    mapping[x] = value.get<Nat>();
  }
  return from_map(mapping);
}

FinitaryPermutation compose(FinitaryPermutation const &g,
                            FinitaryPermutation const &f)
{
  std::map<Nat, Nat> mapping;
  for (auto const &[x, y] : f._forward)
    mapping[x] = g(y);
  for (auto const &[x, y] : g._forward) {
    if (mapping.count(x) == 0)
      mapping[x] = g(f(x));
  }
  return FinitaryPermutation::from_map(mapping);
}

FinitaryPermutation adjacent_transposition(Nat k)
{ return FinitaryPermutation::from_map({{k, k + 1}, {k + 1, k}}); }

FinitaryPermutation transposition_chain(Nat i, Nat j)
{
  if (i >= j)
    throw BadOrder("transposition needs i < j, got (" + std::to_string(i) +
                   " " + std::to_string(j) + ")");

  std::vector<Nat> factors;
  for (Nat k = j - 1; k > i; --k)
    factors.push_back(k);
  factors.push_back(i);
  for (Nat k = i + 1; k < j; ++k)
    factors.push_back(k);

  FinitaryPermutation acc;
  for (Nat k : factors)
    acc = compose(acc, adjacent_transposition(k));
  return acc;
}

FinitaryPermutation transposition(Nat i, Nat j)
{
  FinitaryPermutation chain = transposition_chain(i, j);
  FinitaryPermutation direct = FinitaryPermutation::from_map({{i, j}, {j, i}});
  if (!(chain == direct))
    throw std::logic_error("adjacent chain does not reproduce (" +
                           std::to_string(i) + " " + std::to_string(j) + ")");
  return chain;
}

FinitaryPermutation transitive_witness(std::span<Nat const> from,
                                       std::span<Nat const> to)
{
  if (from.size() != to.size())
    throw LengthMismatch("tuples of length " + std::to_string(from.size()) +
                         " and " + std::to_string(to.size()));

  std::map<Nat, Nat> partial;
  std::unordered_set<Nat> targets;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (!partial.emplace(from[i], to[i]).second)
      throw DuplicateEntries("source tuple repeats " + std::to_string(from[i]));
    if (!targets.insert(to[i]).second)
      throw DuplicateEntries("target tuple repeats " + std::to_string(to[i]));
  }

  return close_partial(std::move(partial));
}

Nat Permutation::operator()(Nat x) const
{
  using namespace provenance;

  return std::visit([x](auto const &e) -> Nat {
    using T = std::decay_t<decltype(e)>;
    if constexpr (std::is_same_v<T, Identity>)
      return x;
    else if constexpr (std::is_same_v<T, Finitary>)
      return e.map(x);
    else if constexpr (std::is_same_v<T, Rearranged>)
      return sigma_apply(e.rearrangement, x);
    else if constexpr (std::is_same_v<T, Composed>)
      return e.g(e.f(x));
    else if constexpr (std::is_same_v<T, Inverted>)
      return e.p.apply_inverse(x);
    else
      return e.forward(x);
  }, _node->expr);
}

Nat Permutation::apply_inverse(Nat y) const
{
  using namespace provenance;

  return std::visit([this, y](auto const &e) -> Nat {
    using T = std::decay_t<decltype(e)>;
    if constexpr (std::is_same_v<T, Identity>)
      return y;
    else if constexpr (std::is_same_v<T, Finitary>)
      return e.map.apply_inverse(y);
    else if constexpr (std::is_same_v<T, Rearranged>) {
      if (e.rearrangement.declared_tail())
        throw NoInverse("no inverse oracle for " + description());
      return sigma_inverse_apply(e.rearrangement, y);
    }
    else if constexpr (std::is_same_v<T, Composed>)
      return e.f.apply_inverse(e.g.apply_inverse(y));
    else if constexpr (std::is_same_v<T, Inverted>)
      return e.p(y);
    else {
      if (!e.inverse)
        throw NoInverse("no inverse oracle for " + description());
      return e.inverse(y);
    }
  }, _node->expr);
}

bool Permutation::has_inverse() const
{
  using namespace provenance;

  return std::visit([](auto const &e) -> bool {
    using T = std::decay_t<decltype(e)>;
    if constexpr (std::is_same_v<T, Rearranged>)
      return !e.rearrangement.declared_tail();
    else if constexpr (std::is_same_v<T, Composed>)
      return e.g.has_inverse() && e.f.has_inverse();
    else if constexpr (std::is_same_v<T, Oracle>)
      return static_cast<bool>(e.inverse);
    else
      return true;
  }, _node->expr);
}

std::string Permutation::description() const
{
  using namespace provenance;

  return std::visit([](auto const &e) -> std::string {
    using T = std::decay_t<decltype(e)>;
    if constexpr (std::is_same_v<T, Identity>)
      return "identity";
    else if constexpr (std::is_same_v<T, Finitary>) {
      if (e.adjacent)
        return "adjacent:" + std::to_string(*e.adjacent);
      return "finitary" + e.map.to_json().at("map").dump();
    }
    else if constexpr (std::is_same_v<T, Rearranged>)
      return "rearrange:" + e.rearrangement.base.description();
    else if constexpr (std::is_same_v<T, Composed>)
      return "(" + e.g.description() + " o " + e.f.description() + ")";
    else if constexpr (std::is_same_v<T, Inverted>)
      return "inverse(" + e.p.description() + ")";
    else
      return "oracle:" + e.label;
  }, _node->expr);
}

Permutation Permutation::identity()
{ return Permutation(std::make_shared<Node const>(Node{provenance::Identity{}})); }

Permutation Permutation::adjacent(Nat k)
{
  return Permutation(std::make_shared<Node const>(
      Node{provenance::Finitary{adjacent_transposition(k), k}}));
}

Permutation Permutation::finitary(FinitaryPermutation f)
{
  return Permutation(std::make_shared<Node const>(
      Node{provenance::Finitary{std::move(f), std::nullopt}}));
}

Permutation Permutation::rearrangement(Rearrangement r)
{
  return Permutation(std::make_shared<Node const>(
      Node{provenance::Rearranged{std::move(r)}}));
}

Permutation Permutation::oracle(std::string label,
                                std::function<Nat(Nat)> forward,
                                std::function<Nat(Nat)> inverse)
{
  return Permutation(std::make_shared<Node const>(
      Node{provenance::Oracle{std::move(label), std::move(forward),
                              std::move(inverse)}}));
}

Permutation compose(Permutation const &g, Permutation const &f)
{
  return Permutation(std::make_shared<Permutation::Node const>(
      Permutation::Node{provenance::Composed{g, f}}));
}

Permutation inverse(Permutation const &p)
{
  using namespace provenance;

  if (!p.has_inverse())
    throw NoInverse("no inverse oracle for " + p.description());

  auto const &expr = p.node().expr;
  if (std::holds_alternative<Identity>(expr))
    return p;
  if (auto const *fin = std::get_if<Finitary>(&expr)) {
    if (fin->adjacent)
      return p;
    return Permutation::finitary(fin->map.inverse());
  }
  if (auto const *inv = std::get_if<Inverted>(&expr))
    return inv->p;

  return Permutation(std::make_shared<Permutation::Node const>(
      Permutation::Node{Inverted{p}}));
}

bool structurally_equal(Permutation const &a, Permutation const &b)
{
  using namespace provenance;

  if (&a.node() == &b.node())
    return true;

  auto const &ea = a.node().expr;
  auto const &eb = b.node().expr;

  auto finitary_map = [](auto const &e) -> std::optional<FinitaryPermutation> {
    if (std::holds_alternative<Identity>(e))
      return FinitaryPermutation{};
    if (auto const *fin = std::get_if<Finitary>(&e))
      return fin->map;
    return std::nullopt;
  };

  auto fa = finitary_map(ea);
  auto fb = finitary_map(eb);
  if (fa || fb)
    return fa && fb && *fa == *fb;

  if (auto const *ra = std::get_if<Rearranged>(&ea)) {
    auto const *rb = std::get_if<Rearranged>(&eb);
    return rb && ra->rearrangement.base.identity() ==
                 rb->rearrangement.base.identity();
  }

  if (auto const *ca = std::get_if<Composed>(&ea)) {
    auto const *cb = std::get_if<Composed>(&eb);
    return cb && structurally_equal(ca->g, cb->g) &&
           structurally_equal(ca->f, cb->f);
  }

  if (auto const *ia = std::get_if<Inverted>(&ea)) {
    auto const *ib = std::get_if<Inverted>(&eb);
    return ib && structurally_equal(ia->p, ib->p);
  }

  return false;
}

std::set<Nat> support(Permutation const &sigma, Nat bound)
{
  if (auto const *fin = std::get_if<provenance::Finitary>(&sigma.node().expr))
    return fin->map.support();

  std::set<Nat> s;
  for (Nat n = 0; n <= bound; ++n) {
    if (sigma(n) != n)
      s.insert(n);
  }
  return s;
}

bool equal_on_prefix(Permutation const &sigma, Permutation const &tau, Nat n)
{
  for (Nat k = 0; k <= n; ++k) {
    if (sigma(k) != tau(k))
      return false;
  }
  return true;
}

FinitaryPermutation finitary_approximation(Permutation const &tau, Nat n)
{
  if (!tau.has_inverse())
    throw NoInverse("finitary approximation needs an inverse oracle for " +
                    tau.description());

  std::set<Nat> domain;
  for (Nat k = 0; k <= n; ++k) {
    domain.insert(k);
    domain.insert(tau.apply_inverse(k));
  }

  std::map<Nat, Nat> partial;
  for (Nat x : domain)
    partial[x] = tau(x);

  return close_partial(std::move(partial));
}

} // namespace rearr
