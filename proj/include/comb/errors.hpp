#pragma once

#include <stdexcept>
#include <string>

namespace comb {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation requested within tolerance of an amplitude pole.
class PoleEvaluation : public Error {
 public:
  using Error::Error;
};

// Boltzmann factor evaluated at (or numerically on top of) a branch point.
class BranchPoint : public Error {
 public:
  using Error::Error;
};

// h_V^2 - 1 fell onto the branch cut of the square root along a rotated ray.
class BranchCut : public Error {
 public:
  using Error::Error;
};

// Band scan could not separate adjacent edges at the current resolution.
class ScanResolutionExceeded : public Error {
 public:
  using Error::Error;
};

// Density of states requested inside the edge exclusion window.
class EdgeSingularity : public Error {
 public:
  using Error::Error;
};

// A user-supplied cutoff is too small for the requested tolerance.
class TruncationUnreachable : public Error {
 public:
  using Error::Error;
};

// Matsubara sum failed to meet the tail bound within the term budget.
class SumNotConverged : public Error {
 public:
  using Error::Error;
};

// Rotation angle too close to 0 or pi/2.
class AlphaTooClose : public Error {
 public:
  using Error::Error;
};

// Massive-field evaluation with a bound state at or above the mass.
class UnstableSpectrum : public Error {
 public:
  using Error::Error;
};

// Root bracketing violated: no sign change across the interval.
class NoSignChange : public Error {
 public:
  using Error::Error;
};

// Root refinement exceeded its iteration budget.
class MaxIterations : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature ran out of panels; carries the partial result.
class PanelsExhausted : public Error {
 public:
  PanelsExhausted(const std::string& msg, double partial, double estimate)
      : Error(msg), partial_value(partial), err_estimate(estimate) {}
  double partial_value;
  double err_estimate;
};

// Model/lattice combination outside the supported domain (e.g. |w1| = 1).
class DegenerateLattice : public Error {
 public:
  using Error::Error;
};

// Configuration file problems; CLI maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace comb
