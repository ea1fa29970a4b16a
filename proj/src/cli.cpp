#include "rearr/cli.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rearr/metric.hpp"
#include "rearr/rotation.hpp"
#include "rearr/sets.hpp"
#include "rearr/turing.hpp"

namespace rearr
{

namespace
{

using nlohmann::json;

Nat parse_nat(std::string_view text, std::size_t offset)
{
  Nat v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("expected a natural number", offset);
  return v;
}

std::string join(std::vector<Nat> const &values)
{
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i)
      s += ' ';
    s += std::to_string(values[i]);
  }
  return s;
}

struct Options
{
  std::string format = "text";
  Nat fuel = default_fuel;

  std::string set, lhs, rhs, perm, points, p0, beta, finite;
  Nat bound = 0, depth = 0, prefix = 0, count = 0, digits = 0;
  Nat boundary = 0, input = 0;
};

void emit(std::ostream &out, Options const &opt,
          std::string const &text, json const &j)
{
  if (opt.format == "json")
    out << j.dump() << '\n';
  else
    out << text << '\n';
}

void point_values(std::ostream &out, Options const &opt,
                  std::function<Nat(Nat)> const &fn)
{
  auto [lo, hi] = parse_point_range(opt.points);
  std::vector<Nat> points, values;
  for (Nat x = lo; x < hi; ++x) {
    points.push_back(x);
    values.push_back(fn(x));
  }
  emit(out, opt, join(values), {{"points", points}, {"values", values}});
}

} // anonymous namespace

Permutation parse_permutation_spec(std::string_view text, Nat fuel)
{
  if (text == "identity")
    return Permutation::identity();

  if (text.substr(0, 9) == "adjacent:")
    return Permutation::adjacent(parse_nat(text.substr(9), 9));

  if (text.substr(0, 10) == "transpose:") {
    auto body = text.substr(10);
    auto comma = body.find(',');
    if (comma == std::string_view::npos)
      throw ParseError("permutation spec: expected transpose:<i>,<j>", 10 + body.size());
    Nat i = parse_nat(body.substr(0, comma), 10);
    Nat j = parse_nat(body.substr(comma + 1), 11 + comma);
    return Permutation::finitary(transposition(i, j));
  }

  if (text.substr(0, 10) == "rearrange:") {
    try {
      return Permutation::rearrangement(parse_set_spec(text.substr(10)), fuel);
    } catch (ParseError const &e) {
      throw ParseError("permutation spec: bad set", 10 + e.position());
    }
  }

  return Permutation::rearrangement(parse_set_spec(text), fuel);
}

std::pair<Nat, Nat> parse_point_range(std::string_view text)
{
  auto dots = text.find("..");
  if (dots == std::string_view::npos)
    throw ParseError("point range: expected a..b", 0);
  Nat lo = parse_nat(text.substr(0, dots), 0);
  Nat hi = parse_nat(text.substr(dots + 2), dots + 2);
  if (hi < lo)
    throw ParseError("point range: end before start", dots + 2);
  return {lo, hi};
}

int run_cli(std::vector<std::string> args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Rearrangements of N induced by subsets of N", "rearr"};
  app.require_subcommand(1);

  Options opt;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto add_fuel = [&](CLI::App *cmd) {
    cmd->add_option("--fuel", opt.fuel, "Maximum upward scan width");
  };

  auto *eval = app.add_subcommand("eval", "Evaluate sigma_A on a point range");
  eval->add_option("--set", opt.set, "Set spec")->required();
  eval->add_option("--points", opt.points, "Half-open range a..b")->required();
  add_fuel(eval);
  add_common(eval);

  auto *inv = app.add_subcommand("inverse", "Evaluate sigma_A^-1 on a point range");
  inv->add_option("--set", opt.set, "Set spec")->required();
  inv->add_option("--points", opt.points, "Half-open range a..b")->required();
  add_fuel(inv);
  add_common(inv);

  auto *cycles = app.add_subcommand("cycles", "Consecutive-cycle decomposition of sigma_A");
  cycles->add_option("--set", opt.set, "Set spec")->required();
  cycles->add_option("--bound", opt.bound, "Scan bound")->required();
  add_common(cycles);

  auto *comp = app.add_subcommand("compose", "Evaluate lhs o rhs on a point range");
  comp->add_option("--lhs", opt.lhs, "Permutation spec")->required();
  comp->add_option("--rhs", opt.rhs, "Permutation spec")->required();
  comp->add_option("--points", opt.points, "Half-open range a..b")->required();
  add_fuel(comp);
  add_common(comp);

  auto *metric = app.add_subcommand("metric", "Pointwise-convergence distance d(lhs, rhs)");
  metric->add_option("--lhs", opt.lhs, "Permutation spec")->required();
  metric->add_option("--rhs", opt.rhs, "Permutation spec")->required();
  metric->add_option("--depth", opt.depth, "Scan depth")->required();
  add_fuel(metric);
  add_common(metric);

  auto *xor_cmd = app.add_subcommand("xor", "Symmetric difference prefix");
  xor_cmd->add_option("--lhs", opt.lhs, "Set spec")->required();
  xor_cmd->add_option("--rhs", opt.rhs, "Set spec")->required();
  xor_cmd->add_option("--prefix", opt.prefix, "Prefix length")->required();
  add_common(xor_cmd);

  auto *image = app.add_subcommand("image", "Characteristic prefix of sigma(T)");
  image->add_option("--perm", opt.perm, "Permutation spec")->required();
  image->add_option("--set", opt.set, "Set spec")->required();
  image->add_option("--prefix", opt.prefix, "Prefix length")->required();
  add_fuel(image);
  add_common(image);

  auto *dens = app.add_subcommand("density", "Fraction of [0, N) in the set");
  dens->add_option("--set", opt.set, "Set spec")->required();
  dens->add_option("--prefix", opt.prefix, "Prefix length")->required();
  add_common(dens);

  auto *orb = app.add_subcommand("orbit", "Orbit of p0 under x -> (x + beta) mod 1");
  orb->add_option("--p0", opt.p0, "Start point spec")->required();
  orb->add_option("--beta", opt.beta, "Rotation spec")->required();
  orb->add_option("--count", opt.count, "Number of points")->required();
  orb->add_option("--digits", opt.digits, "Digits per point")->required();
  add_fuel(orb);
  add_common(orb);

  auto *tm = app.add_subcommand("tm-tail", "Run the tail-set Turing machine");
  tm->add_option("--boundary", opt.boundary, "Tail boundary M")->required();
  tm->add_option("--finite", opt.finite, "Comma list of members below M");
  tm->add_option("--input", opt.input, "Unary input k")->required();
  add_common(tm);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (CLI::CallForHelp const &) {
    out << app.help();
    return exit_code::ok;
  } catch (CLI::ParseError const &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::parse_error;
  }

  try {
    if (eval->parsed() || inv->parsed()) {
      Rearrangement r{parse_set_spec(opt.set), opt.fuel};
      if (eval->parsed())
        point_values(out, opt, [&](Nat x) { return sigma_apply(r, x); });
      else
        point_values(out, opt, [&](Nat y) { return sigma_inverse_apply(r, y); });
    }

    else if (cycles->parsed()) {
      CycleDecomposition d = cycle_decomposition(parse_set_spec(opt.set), opt.bound);
      std::string text;
      json list = json::array();
      for (ConsecutiveCycle const &c : d.cycles) {
        text += '(';
        std::vector<Nat> elems;
        for (Nat x = c.first; x <= c.last; ++x)
          elems.push_back(x);
        text += join(elems) + ')';
        list.push_back({c.first, c.last});
      }
      if (text.empty())
        text = "()";
      if (d.unresolved_start)
        text += " unresolved from " + std::to_string(*d.unresolved_start);

      json j{{"bound", d.bound}, {"cycles", list}, {"unresolved_start", nullptr}};
      if (d.unresolved_start)
        j["unresolved_start"] = *d.unresolved_start;
      emit(out, opt, text, j);
    }

    else if (comp->parsed()) {
      Permutation p = compose(parse_permutation_spec(opt.lhs, opt.fuel),
                              parse_permutation_spec(opt.rhs, opt.fuel));
      point_values(out, opt, [&](Nat x) { return p(x); });
    }

    else if (metric->parsed()) {
      MetricValue v = dist(parse_permutation_spec(opt.lhs, opt.fuel),
                           parse_permutation_spec(opt.rhs, opt.fuel), opt.depth);
      json j{{"certainty", v.exact() ? "exact" : "upper_bound"},
             {"zero", v.is_zero()},
             {"exponent", v.exponent()},
             {"text", v.to_string()}};
      emit(out, opt, v.to_string(), j);
    }

    else if (xor_cmd->parsed()) {
      NatSet s = symmetric_difference(parse_set_spec(opt.lhs), parse_set_spec(opt.rhs));
      std::string bits = char_prefix(s, opt.prefix);
      emit(out, opt, bits, {{"prefix", bits}});
    }

    else if (image->parsed()) {
      NatSet s = image_under(parse_permutation_spec(opt.perm, opt.fuel),
                             parse_set_spec(opt.set));
      std::string bits = char_prefix(s, opt.prefix);
      emit(out, opt, bits, {{"prefix", bits}});
    }

    else if (dens->parsed()) {
      Rational d = density(parse_set_spec(opt.set), opt.prefix);
      std::string text = std::to_string(d.numerator()) + "/" +
                         std::to_string(d.denominator());
      emit(out, opt, text,
           {{"numerator", d.numerator()}, {"denominator", d.denominator()}});
    }

    else if (orb->parsed()) {
      auto points = orbit(parse_binary_spec(opt.p0), parse_binary_spec(opt.beta),
                          opt.count, opt.digits, opt.fuel);
      std::string text;
      json list = json::array();
      for (std::size_t i = 0; i < points.size(); ++i) {
        std::string s = to_string(points[i]);
        text += (i ? "\n" : "") + s;
        list.push_back(s);
      }
      emit(out, opt, text, {{"points", list}});
    }

    else if (tm->parsed()) {
      TailMachine m{opt.boundary, {}};
      std::string_view rest = opt.finite;
      std::size_t offset = 0;
      while (!rest.empty()) {
        auto comma = rest.find(',');
        m.finite_part.insert(parse_nat(rest.substr(0, comma), offset));
        if (comma == std::string_view::npos)
          break;
        rest.remove_prefix(comma + 1);
        offset += comma + 1;
      }
      int bit = tm_tail_membership(m, opt.input);
      emit(out, opt, std::to_string(bit), {{"bit", bit}});
    }
  } catch (ParseError const &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::parse_error;
  } catch (FuelExhausted const &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::fuel;
  } catch (Unresolved const &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::fuel;
  } catch (NoInverse const &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::no_inverse;
  } catch (NotOnto const &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::no_inverse;
  } catch (Error const &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::parse_error;
  }

  return exit_code::ok;
}

} // namespace rearr
