#include "rearr/sets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

#include "rearr/group.hpp"
#include "rearr/prng.hpp"

namespace rearr
{

struct NatSet::Impl
{
  SetKind kind;
  std::string description;
  std::optional<Nat> finite_limit;
  std::optional<Nat> tail_start;

  Impl(SetKind kind_, std::string description_)
  : kind(kind_), description(std::move(description_))
  {}

  virtual ~Impl() = default;
  virtual bool member(Nat n) const = 0;
};

namespace
{

using ImplPtr = std::shared_ptr<NatSet::Impl const>;

class FiniteImpl : public NatSet::Impl
{
public:
  explicit FiniteImpl(std::set<Nat> elems)
  : Impl(SetKind::Finite, describe(elems)), _elems(std::move(elems))
  { finite_limit = _elems.empty() ? 0 : *_elems.rbegin() + 1; }

  bool member(Nat n) const override
  { return _elems.count(n) != 0; }

private:
  static std::string describe(std::set<Nat> const &elems)
  {
    if (elems.empty())
      return "empty";

    std::string s = "finite:";
    bool first = true;
    for (Nat e : elems) {
      if (!first)
        s += ',';
      s += std::to_string(e);
      first = false;
    }
    return s;
  }

  std::set<Nat> _elems;
};

class ParityImpl : public NatSet::Impl
{
public:
  explicit ParityImpl(bool odd)
  : Impl(odd ? SetKind::PeriodicOdd : SetKind::PeriodicEven,
         odd ? "odd" : "even"),
    _odd(odd)
  {}

  bool member(Nat n) const override
  { return (n % 2 == 1) == _odd; }

private:
  bool _odd;
};

class TailImpl : public NatSet::Impl
{
public:
  TailImpl(Nat start, std::set<Nat> finite_part)
  : Impl(SetKind::Tail, "tail:" + std::to_string(start)),
    _start(start),
    _finite_part(std::move(finite_part))
  {
    tail_start = _start;
    if (!_finite_part.empty()) {
      description = "tail:" + std::to_string(_start) + "+{";
      bool first = true;
      for (Nat e : _finite_part) {
        if (!first)
          description += ',';
        description += std::to_string(e);
        first = false;
      }
      description += '}';
    }
  }

  bool member(Nat n) const override
  { return n >= _start || _finite_part.count(n) != 0; }

private:
  Nat _start;
  std::set<Nat> _finite_part;
};

class PrngImpl : public NatSet::Impl
{
public:
  PrngImpl(std::uint64_t seed, double p)
  : Impl(SetKind::Prng, describe(seed, p)), _seed(seed), _p(p)
  {}

  bool member(Nat n) const override
  { return unit_from_index(_seed, n) < _p; }

private:
  static std::string describe(std::uint64_t seed, double p)
  {
    std::ostringstream os;
    os << "prng:seed=" << seed << ",p=" << p;
    return os.str();
  }

  std::uint64_t _seed;
  double _p;
};

class BitsImpl : public NatSet::Impl
{
public:
  BitsImpl(std::vector<bool> bits, std::string label)
  : Impl(SetKind::File, std::move(label)), _bits(std::move(bits))
  { finite_limit = _bits.size(); }

  bool member(Nat n) const override
  { return n < _bits.size() && _bits[n]; }

private:
  std::vector<bool> _bits;
};

// Per-index memoization for derived sets. Indices past the cap are
// recomputed on every query.
class MemoImpl : public NatSet::Impl
{
public:
  static constexpr Nat cache_cap = Nat{1} << 22;

  MemoImpl(std::string description, std::function<bool(Nat)> fn)
  : Impl(SetKind::Derived, std::move(description)), _fn(std::move(fn))
  {}

  bool member(Nat n) const override
  {
    if (n >= cache_cap)
      return _fn(n);

    {
      std::lock_guard<std::mutex> lock(_mutex);
      if (n < _cache.size() && _cache[n] >= 0)
        return _cache[n] == 1;
    }

    bool value = _fn(n);

    std::lock_guard<std::mutex> lock(_mutex);
    if (n >= _cache.size())
      _cache.resize(std::max<Nat>(n + 1, _cache.size() * 2), -1);
    _cache[n] = value ? 1 : 0;

    return value;
  }

private:
  std::function<bool(Nat)> _fn;
  mutable std::mutex _mutex;
  mutable std::vector<signed char> _cache;
};

NatSet derived(std::string description,
               std::function<bool(Nat)> fn,
               std::optional<Nat> finite_limit,
               std::optional<Nat> tail_start)
{
  auto impl = std::make_shared<MemoImpl>(std::move(description), std::move(fn));
  impl->finite_limit = finite_limit;
  impl->tail_start = tail_start;
  return NatSet(ImplPtr(std::move(impl)));
}

std::vector<bool> parse_bits(std::string_view text, std::string const &origin)
{
  if (!text.empty() && text.back() == '\n')
    text.remove_suffix(1);
  if (!text.empty() && text.back() == '\r')
    text.remove_suffix(1);

  std::vector<bool> bits;
  bits.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '0' && c != '1')
      throw ParseError("invalid bit '" + std::string(1, c) + "' in " + origin, i);
    bits.push_back(c == '1');
  }
  return bits;
}

} // anonymous namespace

std::string to_string(SetKind kind)
{
  switch (kind) {
  case SetKind::Finite: return "finite";
  case SetKind::PeriodicEven: return "periodic-even";
  case SetKind::PeriodicOdd: return "periodic-odd";
  case SetKind::Tail: return "tail";
  case SetKind::Prng: return "prng";
  case SetKind::File: return "file";
  case SetKind::Derived: return "derived";
  }
  return "unknown";
}

NatSet::NatSet()
: _impl(std::make_shared<FiniteImpl>(std::set<Nat>{}))
{}

bool NatSet::contains(Nat n) const
{ return _impl->member(n); }

SetKind NatSet::kind() const
{ return _impl->kind; }

std::string const &NatSet::description() const
{ return _impl->description; }

std::optional<Nat> NatSet::finite_limit() const
{ return _impl->finite_limit; }

std::optional<Nat> NatSet::tail_start() const
{ return _impl->tail_start; }

NatSet NatSet::finite(std::set<Nat> elems)
{ return NatSet(std::make_shared<FiniteImpl>(std::move(elems))); }

NatSet NatSet::even()
{ return NatSet(std::make_shared<ParityImpl>(false)); }

NatSet NatSet::odd()
{ return NatSet(std::make_shared<ParityImpl>(true)); }

NatSet NatSet::tail(Nat start, std::set<Nat> finite_part)
{
  finite_part.erase(finite_part.lower_bound(start), finite_part.end());
  return NatSet(std::make_shared<TailImpl>(start, std::move(finite_part)));
}

NatSet NatSet::prng(std::uint64_t seed, double p)
{
  if (!(p >= 0.0 && p <= 1.0))
    throw Error("prng density must lie in [0, 1]");
  return NatSet(std::make_shared<PrngImpl>(seed, p));
}

NatSet NatSet::from_bits(std::string_view bits, std::string label)
{
  return NatSet(std::make_shared<BitsImpl>(parse_bits(bits, label),
                                           std::move(label)));
}

NatSet NatSet::from_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open bitstream file '" + path + "'");

  std::ostringstream buf;
  buf << in.rdbuf();
  return from_bits(buf.str(), "file:" + path);
}

std::string char_prefix(NatSet const &a, Nat n)
{
  std::string bits(n, '0');
  for (Nat i = 0; i < n; ++i) {
    if (a.contains(i))
      bits[i] = '1';
  }
  return bits;
}

std::vector<Nat> elements_upto(NatSet const &a, Nat bound)
{
  std::vector<Nat> elems;
  Nat last = bound;
  if (auto lim = a.finite_limit(); lim && *lim <= bound) {
    if (*lim == 0)
      return elems;
    last = *lim - 1;
  }

  for (Nat i = 0; i <= last; ++i) {
    if (a.contains(i))
      elems.push_back(i);
  }
  return elems;
}

NatSet complement(NatSet const &a)
{
  std::optional<Nat> finite_limit, tail_start;
  if (a.tail_start())
    finite_limit = a.tail_start();
  if (a.finite_limit())
    tail_start = a.finite_limit();

  return derived("not(" + a.description() + ")",
                 [a](Nat n) { return !a.contains(n); },
                 finite_limit, tail_start);
}

NatSet symmetric_difference(NatSet const &a, NatSet const &b)
{
  std::optional<Nat> finite_limit, tail_start;
  if (a.finite_limit() && b.finite_limit())
    finite_limit = std::max(*a.finite_limit(), *b.finite_limit());
  if (a.tail_start() && b.tail_start())
    finite_limit = std::max(*a.tail_start(), *b.tail_start());
  if (a.tail_start() && b.finite_limit())
    tail_start = std::max(*a.tail_start(), *b.finite_limit());
  if (a.finite_limit() && b.tail_start())
    tail_start = std::max(*a.finite_limit(), *b.tail_start());

  return derived("xor(" + a.description() + "," + b.description() + ")",
                 [a, b](Nat n) { return a.contains(n) != b.contains(n); },
                 finite_limit, tail_start);
}

NatSet finite_adjust(NatSet const &a, std::set<Nat> const &r, AdjustMode mode)
{
  std::string list;
  for (Nat e : r) {
    if (!list.empty())
      list += ',';
    list += std::to_string(e);
  }
  Nat r_limit = r.empty() ? 0 : *r.rbegin() + 1;

  std::optional<Nat> finite_limit, tail_start;
  if (mode == AdjustMode::Union) {
    if (a.finite_limit())
      finite_limit = std::max(*a.finite_limit(), r_limit);
    tail_start = a.tail_start();
  } else {
    finite_limit = a.finite_limit();
    if (a.tail_start())
      tail_start = std::max(*a.tail_start(), r_limit);
  }

  char const *op = mode == AdjustMode::Union ? "union" : "minus";
  return derived(std::string(op) + "(" + a.description() + ",{" + list + "})",
                 [a, r, mode](Nat n) {
                   bool in_r = r.count(n) != 0;
                   return mode == AdjustMode::Union ? (a.contains(n) || in_r)
                                                    : (a.contains(n) && !in_r);
                 },
                 finite_limit, tail_start);
}

NatSet restrict(NatSet const &a, Nat r, Side side)
{
  if (side == Side::Below) {
    std::set<Nat> elems;
    for (Nat e : elements_upto(a, r))
      elems.insert(e);
    return NatSet::finite(std::move(elems));
  }

  std::optional<Nat> tail_start;
  if (a.tail_start())
    tail_start = std::max(*a.tail_start(), r + 1);

  return derived("above(" + a.description() + "," + std::to_string(r) + ")",
                 [a, r](Nat n) { return n > r && a.contains(n); },
                 a.finite_limit(), tail_start);
}

NatSet image_under(Permutation const &sigma, NatSet const &a)
{
  if (!sigma.has_inverse())
    throw NoInverse("image_under needs an inverse oracle for " +
                    sigma.description());

  return derived("image(" + sigma.description() + "," + a.description() + ")",
                 [sigma, a](Nat n) { return a.contains(sigma.apply_inverse(n)); },
                 std::nullopt, std::nullopt);
}

Rational density(NatSet const &a, Nat n)
{
  if (n == 0)
    throw Error("density needs a prefix length of at least 1");

  std::int64_t count = 0;
  for (Nat i = 0; i < n; ++i) {
    if (a.contains(i))
      ++count;
  }
  return Rational(count, static_cast<std::int64_t>(n));
}

namespace
{

class SpecParser
{
public:
  explicit SpecParser(std::string_view text)
  : _text(text)
  {}

  NatSet parse()
  {
    NatSet result = spec();
    if (_pos != _text.size())
      fail("unexpected trailing input");
    return result;
  }

private:
  [[noreturn]] void fail(std::string const &msg) const
  { throw ParseError("set spec: " + msg, _pos); }

  bool consume(std::string_view token)
  {
    if (_text.substr(_pos, token.size()) == token) {
      _pos += token.size();
      return true;
    }
    return false;
  }

  void expect(char c)
  {
    if (_pos >= _text.size() || _text[_pos] != c)
      fail(std::string("expected '") + c + "'");
    ++_pos;
  }

  bool at_digit() const
  { return _pos < _text.size() && std::isdigit(static_cast<unsigned char>(_text[_pos])); }

  Nat number()
  {
    if (!at_digit())
      fail("expected a natural number");

    Nat value = 0;
    auto first = _text.data() + _pos;
    auto last = _text.data() + _text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc())
      fail("natural number out of range");
    _pos += static_cast<std::size_t>(ptr - first);
    return value;
  }

  double real()
  {
    std::size_t start = _pos;
    while (_pos < _text.size() &&
           (std::isdigit(static_cast<unsigned char>(_text[_pos])) ||
            _text[_pos] == '.' || _text[_pos] == 'e' || _text[_pos] == 'E' ||
            _text[_pos] == '-' || _text[_pos] == '+'))
      ++_pos;

    std::string token(_text.substr(start, _pos - start));
    try {
      std::size_t used = 0;
      double value = std::stod(token, &used);
      if (used != token.size())
        throw std::invalid_argument(token);
      return value;
    } catch (std::exception const &) {
      _pos = start;
      fail("expected a real number");
    }
  }

  NatSet spec()
  {
    _last_finite.clear();

    if (consume("even"))
      return NatSet::even();
    if (consume("odd"))
      return NatSet::odd();
    if (consume("empty"))
      return NatSet::empty();
    if (consume("all"))
      return NatSet::all();

    if (consume("finite:")) {
      std::vector<Nat> elems{number()};
      while (_pos + 1 < _text.size() && _text[_pos] == ',' &&
             std::isdigit(static_cast<unsigned char>(_text[_pos + 1]))) {
        ++_pos;
        elems.push_back(number());
      }
      _last_finite = elems;
      return NatSet::finite({elems.begin(), elems.end()});
    }

    if (consume("tail:"))
      return NatSet::tail(number());

    if (consume("prng:")) {
      if (!consume("seed="))
        fail("expected 'seed='");
      std::uint64_t seed = number();
      expect(',');
      if (!consume("p="))
        fail("expected 'p='");
      std::size_t p_pos = _pos;
      double p = real();
      if (!(p >= 0.0 && p <= 1.0)) {
        _pos = p_pos;
        fail("p must lie in [0, 1]");
      }
      return NatSet::prng(seed, p);
    }

    if (consume("file:")) {
      std::size_t start = _pos;
      while (_pos < _text.size() && _text[_pos] != ',' && _text[_pos] != ')')
        ++_pos;
      if (_pos == start)
        fail("expected a path");
      return NatSet::from_file(std::string(_text.substr(start, _pos - start)));
    }

    if (consume("xor(")) {
      NatSet lhs = spec();
      expect(',');
      NatSet rhs = spec();
      expect(')');
      _last_finite.clear();
      return symmetric_difference(lhs, rhs);
    }

    if (consume("not(")) {
      NatSet inner = spec();
      expect(')');
      _last_finite.clear();
      return complement(inner);
    }

    bool above = consume("above(");
    if (above || consume("below(")) {
      NatSet inner = spec();
      Nat r;
      if (_pos < _text.size() && _text[_pos] == ')' && _last_finite.size() >= 2) {
        // finite:1,2,5,2) -- the greedy element list swallowed the bound
        r = _last_finite.back();
        _last_finite.pop_back();
        inner = NatSet::finite({_last_finite.begin(), _last_finite.end()});
      } else {
        expect(',');
        r = number();
      }
      expect(')');
      _last_finite.clear();
      return restrict(inner, r, above ? Side::Above : Side::Below);
    }

    fail("unknown set spec");
  }

  std::string_view _text;
  std::size_t _pos = 0;
  std::vector<Nat> _last_finite;
};

} // anonymous namespace

NatSet parse_set_spec(std::string_view text)
{ return SpecParser(text).parse(); }

} // namespace rearr
