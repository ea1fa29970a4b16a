#ifndef REARR_GROUP_HPP
#define REARR_GROUP_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "rearrange.hpp"

namespace rearr
{

/*
 * A permutation of N moving finitely many points. Only moved points are
 * stored, so equal permutations have equal representations.
 */
class FinitaryPermutation
{
public:
  FinitaryPermutation() = default;

  // mapping must be a bijection from its key set onto the same set.
  static FinitaryPermutation from_map(std::map<Nat, Nat> const &mapping);

  Nat operator()(Nat x) const;
  Nat apply_inverse(Nat y) const;

  FinitaryPermutation inverse() const;

  std::set<Nat> support() const;
  bool is_identity() const { return _forward.empty(); }
  std::map<Nat, Nat> const &moved() const { return _forward; }

  // Entries sigma(0), ..., sigma(n-1).
  std::vector<Nat> one_line(Nat n) const;

  // Transpositions t_1, ..., t_r with *this == t_1 ∘ t_2 ∘ ... ∘ t_r.
  std::vector<std::pair<Nat, Nat>> transpositions() const;

  nlohmann::json to_json() const;
  static FinitaryPermutation from_json(nlohmann::json const &j);

  bool operator==(FinitaryPermutation const &rhs) const
  { return _forward == rhs._forward; }

  friend FinitaryPermutation compose(FinitaryPermutation const &g,
                                     FinitaryPermutation const &f);

private:
  std::map<Nat, Nat> _forward;
  std::map<Nat, Nat> _inverse;
};

// g ∘ f: apply f, then g.
FinitaryPermutation compose(FinitaryPermutation const &g,
                            FinitaryPermutation const &f);

// sigma_(k): swaps k and k+1.
FinitaryPermutation adjacent_transposition(Nat k);

// (i j) as sigma_(j-1) ∘ ... ∘ sigma_(i+1) ∘ sigma_(i) ∘ sigma_(i+1) ∘ ...
// ∘ sigma_(j-1). Requires i < j.
FinitaryPermutation transposition_chain(Nat i, Nat j);

// (i j) built from the adjacent chain and checked against the direct swap.
FinitaryPermutation transposition(Nat i, Nat j);

// Finitary sigma with sigma(from[k]) = to[k]; leftover points are matched
// in ascending order.
FinitaryPermutation transitive_witness(std::span<Nat const> from,
                                       std::span<Nat const> to);

class Permutation;

namespace provenance
{

struct Identity {};
struct Finitary { FinitaryPermutation map; std::optional<Nat> adjacent; };
struct Rearranged { Rearrangement rearrangement; };
struct Composed;
struct Inverted;
struct Oracle
{
  std::string label;
  std::function<Nat(Nat)> forward;
  std::function<Nat(Nat)> inverse;  // may be empty
};

} // namespace provenance

/*
 * A lazily evaluated bijection of N (or injection, for rearrangements over
 * tail sets) with an optional inverse oracle. Values are immutable and
 * share structure; the expression tree that built a permutation is kept so
 * inverses are computed structurally.
 */
class Permutation
{
public:
  struct Node;

  Nat operator()(Nat x) const;
  Nat apply_inverse(Nat y) const;

  bool has_inverse() const;
  std::string description() const;
  Node const &node() const { return *_node; }

  static Permutation identity();
  static Permutation adjacent(Nat k);
  static Permutation finitary(FinitaryPermutation f);
  static Permutation rearrangement(Rearrangement r);
  static Permutation rearrangement(NatSet a, Nat fuel = default_fuel)
  { return rearrangement(Rearrangement{std::move(a), fuel}); }
  static Permutation oracle(std::string label,
                            std::function<Nat(Nat)> forward,
                            std::function<Nat(Nat)> inverse = {});

  friend Permutation compose(Permutation const &g, Permutation const &f);
  friend Permutation inverse(Permutation const &p);

private:
  explicit Permutation(std::shared_ptr<Node const> node)
  : _node(std::move(node))
  {}

  std::shared_ptr<Node const> _node;
};

namespace provenance
{

struct Composed { Permutation g; Permutation f; };
struct Inverted { Permutation p; };

} // namespace provenance

struct Permutation::Node
{
  std::variant<provenance::Identity,
               provenance::Finitary,
               provenance::Rearranged,
               provenance::Composed,
               provenance::Inverted,
               provenance::Oracle> expr;
};

// g ∘ f. The inverse oracle is present iff both operands have one.
Permutation compose(Permutation const &g, Permutation const &f);

// Throws NoInverse when p has no inverse oracle.
Permutation inverse(Permutation const &p);

// Same expression tree: shared nodes, equal finitary maps, or rearrangements
// over the same set oracle.
bool structurally_equal(Permutation const &a, Permutation const &b);

// {n <= bound : sigma(n) != n}.
std::set<Nat> support(Permutation const &sigma, Nat bound);
inline std::set<Nat> support(FinitaryPermutation const &sigma, Nat = 0)
{ return sigma.support(); }

bool equal_on_prefix(Permutation const &sigma, Permutation const &tau, Nat n);

// pi in FS(N) agreeing with tau and tau^-1 on [0, n].
FinitaryPermutation finitary_approximation(Permutation const &tau, Nat n);

} // namespace rearr

#endif // REARR_GROUP_HPP
