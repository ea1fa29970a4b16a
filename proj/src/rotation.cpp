#include "rearr/rotation.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <mutex>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "rearr/prng.hpp"

namespace rearr
{

struct BinarySeq::Impl
{
  SeqKind kind;
  std::string description;

  Impl(SeqKind kind_, std::string description_)
  : kind(kind_), description(std::move(description_))
  {}

  virtual ~Impl() = default;
  virtual int digit(Nat i) const = 0;
};

namespace
{

using DigitFn = std::function<int(Nat)>;

constexpr Nat unlimited = std::numeric_limits<Nat>::max();

/*
 * Carry resolution shared by oracle and windowed addition. Digits at
 * index >= limit are unknown. Works right to left:
 *   c_i = 1        if a_{i+1} + b_{i+1} = 2
 *   c_i = 0        if a_{i+1} + b_{i+1} = 0
 *   c_i = c_{i+1}  otherwise (settled wherever c_{i+1} settled)
 */
CarryVerdict resolve_carries(DigitFn const &a, DigitFn const &b,
                             Nat n, Nat fuel, Nat limit)
{
  CarryVerdict v{Digits(n, 0), true, n, 0};
  if (n == 0)
    return v;

  constexpr Nat none = unlimited;
  std::vector<Nat> settled_at(n, none);

  {
    Nat i = n - 1;
    for (Nat j = n; j < limit && j - i <= fuel; ++j) {
      int s = a(j) + b(j);
      if (s != 1) {
        settled_at[i] = j;
        v.bits[i] = s == 2;
        break;
      }
    }
  }

  for (Nat i = n - 1; i-- > 0;) {
    int s = a(i + 1) + b(i + 1);
    if (s != 1) {
      settled_at[i] = i + 1;
      v.bits[i] = s == 2;
    } else if (settled_at[i + 1] != none && settled_at[i + 1] - i <= fuel) {
      settled_at[i] = settled_at[i + 1];
      v.bits[i] = v.bits[i + 1];
    }
  }

  for (Nat i = 0; i < n; ++i) {
    if (settled_at[i] == none) {
      v.resolved = false;
      v.resolved_prefix = i;
      break;
    }
    v.lookahead_used = std::max(v.lookahead_used, settled_at[i] - i);
  }

  return v;
}

// Digits of a sequence, fetched once and kept for repeated scans.
class DigitCache
{
public:
  explicit DigitCache(BinarySeq const &seq)
  : _seq(seq)
  {}

  int operator()(Nat i)
  {
    while (_digits.size() <= i)
      _digits.push_back(static_cast<std::uint8_t>(_seq.digit(_digits.size())));
    return _digits[i];
  }

private:
  BinarySeq const &_seq;
  Digits _digits;
};

class ConstantPrefixImpl : public BinarySeq::Impl
{
public:
  explicit ConstantPrefixImpl(Digits digits)
  : Impl(SeqKind::ConstantPrefix,
         digits.empty() ? "zero" : "bits:" + to_string(digits)),
    _digits(std::move(digits))
  {}

  int digit(Nat i) const override
  { return i < _digits.size() ? _digits[i] : 0; }

private:
  Digits _digits;
};

class RationalImpl : public BinarySeq::Impl
{
public:
  RationalImpl(std::uint64_t p, std::uint64_t q)
  : Impl(SeqKind::Rational,
         "rational:" + std::to_string(p) + "/" + std::to_string(q)),
    _p(p), _q(q)
  {}

  // Remainder after i doubling steps is p * 2^i mod q.
  int digit(Nat i) const override
  {
    using boost::multiprecision::uint128_t;
    uint128_t r = _p % _q;
    uint128_t base = 2 % _q;
    for (Nat e = i; e > 0; e >>= 1) {
      if (e & 1)
        r = r * base % _q;
      base = base * base % _q;
    }
    return 2 * r >= uint128_t(_q) ? 1 : 0;
  }

private:
  std::uint64_t _p;
  std::uint64_t _q;
};

class GoldenImpl : public BinarySeq::Impl
{
public:
  GoldenImpl()
  : Impl(SeqKind::Golden, "golden")
  {}

  int digit(Nat i) const override
  {
    std::lock_guard<std::mutex> lock(_mutex);
    if (i >= _digits.size())
      _digits = golden_beta(std::max<Nat>({i + 1, 2 * _digits.size(), 256}));
    return _digits[i];
  }

private:
  mutable std::mutex _mutex;
  mutable Digits _digits;
};

class PrngSeqImpl : public BinarySeq::Impl
{
public:
  explicit PrngSeqImpl(std::uint64_t seed)
  : Impl(SeqKind::Prng, "prng:" + std::to_string(seed)), _seed(seed)
  {}

  int digit(Nat i) const override
  { return static_cast<int>(hash_index(_seed, i) >> 63); }

private:
  std::uint64_t _seed;
};

class SumImpl : public BinarySeq::Impl
{
public:
  SumImpl(BinarySeq a, BinarySeq b, Nat fuel)
  : Impl(SeqKind::DerivedSum,
         "sum(" + a.description() + "," + b.description() + ")"),
    _a(std::move(a)), _b(std::move(b)), _fuel(fuel)
  {}

  int digit(Nat i) const override
  {
    {
      std::lock_guard<std::mutex> lock(_mutex);
      if (auto it = _memo.find(i); it != _memo.end())
        return it->second;
    }

    int carry = -1;
    for (Nat j = i + 1; j - i <= _fuel; ++j) {
      int s = _a.digit(j) + _b.digit(j);
      if (s != 1) {
        carry = s == 2;
        break;
      }
    }
    if (carry < 0)
      throw Unresolved("carry into digit", i);

    int value = _a.digit(i) ^ _b.digit(i) ^ carry;

    std::lock_guard<std::mutex> lock(_mutex);
    _memo.emplace(i, static_cast<std::uint8_t>(value));
    return value;
  }

private:
  BinarySeq _a;
  BinarySeq _b;
  Nat _fuel;
  mutable std::mutex _mutex;
  mutable std::unordered_map<Nat, std::uint8_t> _memo;
};

} // anonymous namespace

std::string to_string(Digits const &d)
{
  std::string s(d.size(), '0');
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i])
      s[i] = '1';
  }
  return s;
}

Digits parse_digits(std::string_view text)
{
  Digits d;
  d.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1')
      throw ParseError("expected binary digit", i);
    d.push_back(text[i] == '1');
  }
  return d;
}

int BinarySeq::digit(Nat i) const
{ return _impl->digit(i); }

Digits BinarySeq::prefix(Nat n) const
{
  Digits d(n);
  for (Nat i = 0; i < n; ++i)
    d[i] = static_cast<std::uint8_t>(digit(i));
  return d;
}

SeqKind BinarySeq::kind() const
{ return _impl->kind; }

std::string const &BinarySeq::description() const
{ return _impl->description; }

BinarySeq BinarySeq::constant_prefix(Digits digits)
{ return BinarySeq(std::make_shared<ConstantPrefixImpl>(std::move(digits))); }

BinarySeq BinarySeq::rational(std::uint64_t p, std::uint64_t q)
{
  if (q == 0 || p >= q)
    throw Error("rational point needs 0 <= p < q");
  return BinarySeq(std::make_shared<RationalImpl>(p, q));
}

BinarySeq BinarySeq::golden()
{ return BinarySeq(std::make_shared<GoldenImpl>()); }

BinarySeq BinarySeq::prng(std::uint64_t seed)
{ return BinarySeq(std::make_shared<PrngSeqImpl>(seed)); }

BinarySeq BinarySeq::sum(BinarySeq a, BinarySeq b, Nat fuel)
{ return BinarySeq(std::make_shared<SumImpl>(std::move(a), std::move(b), fuel)); }

BinarySeq parse_binary_spec(std::string_view text)
{
  auto number = [&](std::string_view s, std::size_t offset) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ParseError("expected a natural number", offset);
    return v;
  };

  if (text == "zero")
    return BinarySeq::zero();
  if (text == "golden")
    return BinarySeq::golden();
  if (text.substr(0, 5) == "bits:") {
    try {
      return BinarySeq::constant_prefix(parse_digits(text.substr(5)));
    } catch (ParseError const &e) {
      throw ParseError("binary spec: expected binary digits", 5 + e.position());
    }
  }
  if (text.substr(0, 5) == "prng:")
    return BinarySeq::prng(number(text.substr(5), 5));
  if (text.substr(0, 9) == "rational:") {
    auto body = text.substr(9);
    auto slash = body.find('/');
    if (slash == std::string_view::npos)
      throw ParseError("binary spec: expected p/q", 9 + body.size());
    auto p = number(body.substr(0, slash), 9);
    auto q = number(body.substr(slash + 1), 10 + slash);
    return BinarySeq::rational(p, q);
  }
  throw ParseError("unknown binary spec", 0);
}

Digits normalize_tail(Digits const &digits)
{
  if (digits.empty() || digits.back() == 0)
    return digits;

  auto last_zero = std::find(digits.rbegin(), digits.rend(), 0);
  if (last_zero == digits.rend())
    throw AllOnes("expansion 0.111... equals 1, outside [0, 1)");

  Digits out = digits;
  auto zero_pos = static_cast<std::size_t>(digits.rend() - last_zero) - 1;
  out[zero_pos] = 1;
  std::fill(out.begin() + static_cast<std::ptrdiff_t>(zero_pos) + 1, out.end(), 0);
  return out;
}

CarryVerdict try_carry_bits(BinarySeq const &a, BinarySeq const &b,
                            Nat n, Nat fuel)
{
  DigitCache ca(a), cb(b);
  return resolve_carries(std::ref(ca), std::ref(cb), n, fuel, unlimited);
}

CarryVerdict carry_bits(BinarySeq const &a, BinarySeq const &b,
                        Nat n, Nat fuel)
{
  CarryVerdict v = try_carry_bits(a, b, n, fuel);
  if (!v.resolved)
    throw Unresolved("carry", v.resolved_prefix);
  return v;
}

Digits add_mod1(BinarySeq const &a, BinarySeq const &beta, Nat n, Nat fuel)
{
  CarryVerdict c = carry_bits(a, beta, n, fuel);

  Digits f(n);
  for (Nat i = 0; i < n; ++i)
    f[i] = static_cast<std::uint8_t>(a.digit(i) ^ beta.digit(i) ^ c.bits[i]);
  return f;
}

Digits golden_beta(Nat n)
{
  using boost::multiprecision::cpp_int;

  constexpr Nat guard = 64;
  Nat const precision = n + guard;

  cpp_int one = cpp_int(1) << precision;
  cpp_int root = boost::multiprecision::sqrt(cpp_int(5) << (2 * precision));
  cpp_int scaled = (root - one) >> 1;  // floor(beta * 2^precision)

  Digits d(n);
  for (Nat i = 0; i < n; ++i)
    d[i] = boost::multiprecision::bit_test(scaled, precision - 1 - i) ? 1 : 0;
  return d;
}

std::vector<Digits> orbit(BinarySeq const &p0, BinarySeq const &beta,
                          Nat count, Nat n, Nat fuel)
{
  std::vector<Digits> points;
  if (count == 0)
    return points;
  points.reserve(count);

  // Each step settles carries inside the window only, so the exact prefix
  // shrinks by the final propagation chain; start wide enough to absorb it.
  Digits current = p0.prefix(n + count * orbit_guard);
  Digits b = beta.prefix(current.size());
  points.emplace_back(current.begin(), current.begin() + static_cast<std::ptrdiff_t>(n));

  for (Nat k = 1; k < count; ++k) {
    Nat width = current.size();
    auto da = [&](Nat j) -> int { return current[j]; };
    auto db = [&](Nat j) -> int { return b[j]; };
    CarryVerdict c = resolve_carries(da, db, width, fuel, width);

    Nat keep = c.resolved_prefix;
    if (keep < n)
      throw Unresolved("orbit iteration " + std::to_string(k) +
                       " (digit " + std::to_string(keep) + ")", k);

    Digits next(keep);
    for (Nat i = 0; i < keep; ++i)
      next[i] = static_cast<std::uint8_t>(current[i] ^ b[i] ^ c.bits[i]);
    current = std::move(next);
    points.emplace_back(current.begin(), current.begin() + static_cast<std::ptrdiff_t>(n));
  }

  return points;
}

Rational equidistribution_stat(std::vector<Digits> const &points, Nat bins)
{
  if (bins == 0)
    throw Error("equidistribution needs at least one bin");
  if (points.empty())
    throw Error("equidistribution needs at least one point");

  Nat needed = 0;
  while ((Nat{1} << needed) < bins)
    ++needed;

  std::vector<std::int64_t> counts(bins, 0);
  for (Digits const &p : points) {
    if (p.size() < needed)
      throw TooFewDigits("point has " + std::to_string(p.size()) +
                         " digits, binning needs " + std::to_string(needed));

    Nat used = std::min<Nat>(p.size(), 62 - needed);
    Nat value = 0;
    for (Nat i = 0; i < used; ++i)
      value = (value << 1) | p[i];
    // floor(x * bins) from the leading digits
    Nat bin = static_cast<Nat>(
        (boost::multiprecision::uint128_t(value) * bins) >> used);
    ++counts[bin];
  }

  auto const total = static_cast<std::int64_t>(points.size());
  auto const nbins = static_cast<std::int64_t>(bins);
  std::int64_t worst = 0;
  for (std::int64_t c : counts)
    worst = std::max(worst, std::abs(c * nbins - total));

  return Rational(worst, total * nbins);
}

} // namespace rearr
