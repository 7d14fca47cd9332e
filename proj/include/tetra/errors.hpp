#pragma once

#include <stdexcept>
#include <string>

namespace tetra {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonSquare : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// Operator norm exceeds 1 + contraction_slack where a contraction is required.
struct NotAContraction : Error {
  using Error::Error;
};

/// |x3| too close to 1 for the certificate linear system to be solvable.
struct BoundaryModulus : Error {
  using Error::Error;
};

struct NotUnimodular : Error {
  using Error::Error;
};

/// The compressed defect metric has an eigenvalue below the rank cutoff;
/// the defect space is numerically borderline.
struct DegenerateDefect : Error {
  using Error::Error;
};

/// wold_split input whose third operator fails the interior isometry contract.
struct NotIsometricInterior : Error {
  using Error::Error;
};

/// One of the three symbol conditions for the block Toeplitz pure isometry fails.
struct SymbolConditionsViolated : Error {
  SymbolConditionsViolated(int cond, double magnitude, const std::string& what)
      : Error(what), condition(cond), magnitude(magnitude) {}
  int condition;     // 1, 2 or 3
  double magnitude;  // by how much the condition fails
};

/// Commutator hypotheses on the adjoint fundamental operators fail.
struct HypothesisViolated : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace tetra
