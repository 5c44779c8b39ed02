#pragma once

#include "sqckit/ext_real.hpp"
#include "sqckit/linalg.hpp"

namespace sqckit {

/// A candidate triple for the defining inequality: endpoints x != y and a
/// mixing weight strictly between 0 and 1.
struct Triple {
  Vec x;
  Vec y;
  double lambda = 0.5;
};

/// Machine-checkable refutation: at this triple the function value at the
/// combination exceeds max{f(x), f(y)} - (sigma/2) lambda (1-lambda) ||x-y||^2
/// by more than the tolerance. Re-evaluating the triple reproduces lhs and
/// rhs bit for bit.
struct ViolationWitness {
  Triple triple;
  ExtReal lhs = 0.0;      // f at the combination
  double rhs = 0.0;       // the sigma-discounted max (always finite)
  double margin = 0.0;    // lhs - rhs, may be +inf
  double sigma = 0.0;     // the sigma that was refuted
  double tolerance = 0.0; // tau in force when the violation was declared
};

}  // namespace sqckit
