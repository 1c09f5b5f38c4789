#pragma once

#include <stdexcept>
#include <string>

namespace cyclap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the supported domain (alpha, n, j, precision).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Both closed-form eigenvector branches vanish (multiplicity-two regime).
class DegenerateCase : public Error {
 public:
  using Error::Error;
};

/// Eigenvalue 0 or 4 without the matching boundary eigenvector conditions.
class EigenvalueAtBoundary : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// Fixed-point iteration refused because n <= K1(alpha).
class ContractionNotGuaranteed : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace cyclap
