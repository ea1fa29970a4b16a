#include "rearr/turing.hpp"

#include <limits>

namespace rearr
{

TuringMachine::TuringMachine(unsigned start, std::set<unsigned> halting)
: _start(start), _halting(std::move(halting))
{}

void TuringMachine::add(unsigned state, TapeSymbol read, Transition t)
{ _table[{state, read}] = t; }

TuringMachine::Result TuringMachine::run(std::vector<TapeSymbol> tape,
                                         Nat max_steps) const
{
  Result r{std::move(tape), 0, _start, 0};

  while (_halting.count(r.state) == 0) {
    if (r.head >= r.tape.size())
      r.tape.resize(r.head + 1, TapeSymbol::Blank);

    auto it = _table.find({r.state, r.tape[r.head]});
    if (it == _table.end())
      break;

    if (r.steps == max_steps)
      throw FuelExhausted("turing machine", 0, max_steps);
    ++r.steps;

    Transition const &t = it->second;
    r.tape[r.head] = t.write;
    if (t.move == Move::Right)
      ++r.head;
    else if (t.move == Move::Left && r.head > 0)
      --r.head;
    r.state = t.next;
  }

  return r;
}

TuringMachine build_tail_machine(TailMachine const &m)
{
  if (m.boundary >= std::numeric_limits<unsigned>::max() - 1)
    throw Error("tail machine boundary too large");

  auto const top = static_cast<unsigned>(m.boundary);
  unsigned const halt = top + 1;

  TuringMachine tm(0, {halt});
  for (unsigned k = 0; k < top; ++k) {
    tm.add(k, TapeSymbol::One, {TapeSymbol::One, Move::Right, k + 1});
    TapeSymbol verdict = m.finite_part.count(k) ? TapeSymbol::One
                                                : TapeSymbol::Zero;
    tm.add(k, TapeSymbol::Blank, {verdict, Move::Stay, halt});
  }
  tm.add(top, TapeSymbol::One, {TapeSymbol::One, Move::Right, top});
  tm.add(top, TapeSymbol::Blank, {TapeSymbol::One, Move::Stay, halt});

  return tm;
}

int tm_tail_membership(TailMachine const &m, Nat k)
{
  for (Nat e : m.finite_part) {
    if (e >= m.boundary)
      throw Error("tail machine finite part must lie below the boundary");
  }

  TuringMachine tm = build_tail_machine(m);

  std::vector<TapeSymbol> tape(k, TapeSymbol::One);
  tape.push_back(TapeSymbol::Blank);

  auto result = tm.run(std::move(tape), k + 2);
  return result.tape[result.head] == TapeSymbol::One ? 1 : 0;
}

} // namespace rearr
