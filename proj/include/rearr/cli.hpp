#ifndef REARR_CLI_HPP
#define REARR_CLI_HPP

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "group.hpp"

namespace rearr
{

namespace exit_code
{

inline constexpr int ok = 0;
inline constexpr int parse_error = 1;
inline constexpr int fuel = 2;          // FuelExhausted, Unresolved
inline constexpr int no_inverse = 3;    // NoInverse, NotOnto

} // namespace exit_code

// identity | adjacent:<k> | transpose:<i>,<j> | rearrange:<set-spec>;
// a bare set spec is read as rearrange:<set-spec>.
Permutation parse_permutation_spec(std::string_view text, Nat fuel = default_fuel);

// Half-open range "a..b".
std::pair<Nat, Nat> parse_point_range(std::string_view text);

// Runs one command line (without the program name).
int run_cli(std::vector<std::string> args, std::ostream &out, std::ostream &err);

} // namespace rearr

#endif // REARR_CLI_HPP
