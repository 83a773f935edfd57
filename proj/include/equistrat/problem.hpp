#pragma once

#include "equistrat/representation.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace equistrat {

/// Evaluates a scalar expression: decimals, pi, + - * / ^, parentheses,
/// cos/sin/sqrt. Throws SpecError on malformed input.
double eval_expression(const std::string& text);

/// Matrix of expression strings, row-major; kept textual so specs round-trip.
struct MatrixExpr {
  std::vector<std::vector<std::string>> rows;

  Matrix evaluate() const;
  std::string to_string() const;
  /// Parses "[[a, b], [c, d]]".
  static MatrixExpr parse(const std::string& text);
};

/// A representation directive: either a sum of builtin block names or one
/// explicit matrix per generator.
struct RepDirective {
  std::vector<std::string> blocks;
  std::map<std::string, MatrixExpr> explicit_images;

  bool is_explicit() const { return blocks.empty(); }
};

struct ProblemOptions {
  std::uint64_t seed = 42;
  int samples = 32;
  int starts = 64;
  int degree_max = 5;
  double tol = 1e-9;
  int probe_starts = 256;
  int probe_draws = 10;
  double probe_radius = 1.0;
};

struct ProblemSpec {
  std::string name;
  std::string group;                       // builtin directive or "explicit"
  std::vector<std::string> generator_names;  // optional rename / explicit order
  std::map<std::string, MatrixExpr> generators;  // explicit group generators
  RepDirective V;
  RepDirective W;
  ProblemOptions options;
};

/// Parses the flat key = value format; SpecError carries "line N" context.
ProblemSpec parse_spec(const std::string& text);
ProblemSpec load_spec(const std::string& path);
/// Canonical text; parse_spec(serialize_spec(s)) reproduces s.
std::string serialize_spec(const ProblemSpec& spec);

/// A builtin group together with its named blocks (real representations
/// given by generator images).
struct BuiltinGroup {
  GroupPtr group;
  std::string directive;
  std::vector<std::string> generator_names;
  /// Representative block names for listing; parametrized families such as
  /// rot(k) accept any admissible k.
  std::vector<std::string> block_names;
  std::function<std::optional<std::vector<Matrix>>(const std::string&)> resolve;

  /// Generator images of a block; SpecError for unknown names.
  std::vector<Matrix> block(const std::string& name) const;
};

/// cyclic n | dihedral n | frobenius p q | product(A, B) | explicit.
BuiltinGroup make_group(const std::string& directive, const std::vector<std::string>& names = {},
                        const std::map<std::string, MatrixExpr>& explicit_gens = {}, double tol = 1e-9);

struct Problem {
  ProblemSpec spec;
  BuiltinGroup builtin;
  Representation V;
  Representation W;
};

Representation build_representation(const BuiltinGroup& g, const RepDirective& d, double tol = 1e-9);
Problem build_problem(const ProblemSpec& spec);

}  // namespace equistrat
