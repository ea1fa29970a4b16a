#ifndef REARR_ERRORS_HPP
#define REARR_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rearr
{

using Nat = std::uint64_t;

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error
{
public:
  ParseError(std::string const &msg, std::size_t position)
  : Error(msg + " at position " + std::to_string(position)),
    _position(position)
  {}

  std::size_t position() const { return _position; }

private:
  std::size_t _position;
};

// A bounded scan ran out of fuel before it could settle an answer.
class FuelExhausted : public Error
{
public:
  FuelExhausted(std::string const &what, Nat start, Nat fuel)
  : Error(what + ": scan from " + std::to_string(start) +
          " exhausted fuel " + std::to_string(fuel)),
    _start(start)
  {}

  Nat start() const { return _start; }

private:
  Nat _start;
};

// A point provably outside the image of a rearrangement over a tail set.
class NotOnto : public Error
{
public:
  explicit NotOnto(Nat point)
  : Error("no preimage for " + std::to_string(point) +
          " (rearrangement over a tail set is not onto)"),
    _point(point)
  {}

  Nat point() const { return _point; }

private:
  Nat _point;
};

class NoInverse : public Error
{
public:
  using Error::Error;
};

// Carry propagation did not settle inside the lookahead window.
class Unresolved : public Error
{
public:
  Unresolved(std::string const &what, Nat index)
  : Error(what + " unresolved at index " + std::to_string(index)),
    _index(index)
  {}

  Nat index() const { return _index; }

private:
  Nat _index;
};

class RepeatedEntry : public Error { public: using Error::Error; };
class BoundTooSmall : public Error { public: using Error::Error; };
class BadOrder : public Error { public: using Error::Error; };
class DuplicateEntries : public Error { public: using Error::Error; };
class LengthMismatch : public Error { public: using Error::Error; };
class NoDifference : public Error { public: using Error::Error; };
class AllOnes : public Error { public: using Error::Error; };
class TooFewDigits : public Error { public: using Error::Error; };

} // namespace rearr

#endif // REARR_ERRORS_HPP
