#ifndef REARR_TURING_HPP
#define REARR_TURING_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace rearr
{

enum class TapeSymbol : char { Blank = '_', Zero = '0', One = '1' };

enum class Move { Left, Right, Stay };

struct Transition
{
  TapeSymbol write;
  Move move;
  unsigned next;
};

/*
 * Deterministic single-tape machine. States are numbered; a missing
 * (state, symbol) entry halts. The tape is unbounded to the right and
 * blank wherever nothing has been written.
 */
class TuringMachine
{
public:
  TuringMachine(unsigned start, std::set<unsigned> halting);

  void add(unsigned state, TapeSymbol read, Transition t);

  struct Result
  {
    std::vector<TapeSymbol> tape;
    std::size_t head;
    unsigned state;
    Nat steps;
  };

  // Throws FuelExhausted if the machine has not halted after max_steps.
  Result run(std::vector<TapeSymbol> tape, Nat max_steps) const;

private:
  unsigned _start;
  std::set<unsigned> _halting;
  std::map<std::pair<unsigned, TapeSymbol>, Transition> _table;
};

// The tail set {n : n >= boundary} union finite_part, finite_part < boundary.
struct TailMachine
{
  Nat boundary;
  std::set<Nat> finite_part;
};

// States q_0..q_M plus a halt state; q_k steps right over each unary 1.
TuringMachine build_tail_machine(TailMachine const &m);

// Runs the machine on unary input k and returns the bit it writes.
int tm_tail_membership(TailMachine const &m, Nat k);

} // namespace rearr

#endif // REARR_TURING_HPP
