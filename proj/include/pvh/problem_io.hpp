// Problem-file parsing (JSON schema v1), certificate serialization, and the
// command-line driver tying the library together.
//
// Problem schema (version 1):
//   {
//     "schema_version": 1,            // optional, defaults to 1
//     "n": 2,                         // variable count, required
//     "objective": [ term, ... ],     // required
//     "constraints": [ [term, ...], ... ],   // optional, g_j >= 0
//     "ball_radius": 1.0,             // optional; must match constraint 1
//     "options": { "name": number }   // optional free-form numbers
//   }
// where term = [e_1, ..., e_n, coefficient] (n nonnegative integer
// exponents followed by one real).  A first constraint matching
// L - (x_1^2 + ... + x_n^2) coefficient-wise is recorded as the ball
// constraint with radius-squared L.
//
// Certificate schema (version 1):
//   { "schema_version": 1, "k": 1, "eps": 0.0, "lambda": -1.0,
//     "grams": [ [[...], ...], ... ] }   // dense symmetric matrices,
//                                        // [] marks an absent block
#pragma once

#include <map>
#include <string>

#include "pvh/hierarchy.hpp"
#include "pvh/pop.hpp"

namespace pvh {

struct ProblemFile {
  int schema_version = 1;
  PopProblem problem;
  std::map<std::string, double> options;
};

// Parses and validates a problem file; errors carry the JSON path of the
// offending element (e.g. "constraints[0][2]: term length 2, expected n+1").
ProblemFile parse_problem_file(const std::string& text);
PopProblem parse_problem(const std::string& text);

// Canonical emission; emit -> parse round-trips to an identical problem.
std::string emit_problem(const PopProblem& prob);

std::string emit_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);

// Command-line entry point.  Subcommands: solve, bounds, construct,
// bernstein, continuous, verify.  Exit codes: 0 success, 1 user error,
// 2 numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace pvh
