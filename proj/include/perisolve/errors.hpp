#pragma once

#include <stdexcept>
#include <string>

namespace perisolve {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid construction data: bad dimensions, lags outside the horizon, ...
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

// Grid too coarse for the highest frequency involved.
class NyquistViolation : public Error {
 public:
  NyquistViolation(int grid, int max_frequency)
      : Error("grid size " + std::to_string(grid) +
              " violates the Nyquist margin for max frequency " +
              std::to_string(max_frequency)),
        grid(grid),
        max_frequency(max_frequency) {}
  int grid;
  int max_frequency;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Characteristic matrix singular (or past the condition limit) at frequency k.
class Resonance : public Error {
 public:
  explicit Resonance(int k, const std::string& detail = "")
      : Error("resonance at k=" + std::to_string(k) +
              (detail.empty() ? "" : ": " + detail)),
        k(k) {}
  int k;
};

// Negative powers of ik requested at k = 0.
class ZeroFrequency : public Error {
 public:
  using Error::Error;
};

class RangeTooSmall : public Error {
 public:
  using Error::Error;
};

class MissingFrequency : public Error {
 public:
  explicit MissingFrequency(int k)
      : Error("operator sequence has no entry at k=" + std::to_string(k)),
        k(k) {}
  int k;
};

class InvalidExponent : public Error {
 public:
  using Error::Error;
};

class PartitionTooShort : public Error {
 public:
  PartitionTooShort(int jmax, int max_frequency)
      : Error("partition with jmax=" + std::to_string(jmax) +
              " does not cover frequency " + std::to_string(max_frequency)),
        jmax(jmax),
        max_frequency(max_frequency) {}
  int jmax;
  int max_frequency;
};

class ZeroInput : public Error {
 public:
  using Error::Error;
};

class TruncationTooSmall : public Error {
 public:
  TruncationTooSmall(int k, int truncation)
      : Error("forcing has frequency " + std::to_string(k) +
              " beyond truncation " + std::to_string(truncation)),
        k(k),
        truncation(truncation) {}
  int k;
  int truncation;
};

// Discrete resonance of the finite-difference system at a grid mode.
class SingularSystem : public Error {
 public:
  SingularSystem(int mode, int signed_frequency)
      : Error("finite-difference system singular at grid mode " +
              std::to_string(mode) + " (frequency " +
              std::to_string(signed_frequency) + ")"),
        mode(mode),
        signed_frequency(signed_frequency) {}
  int mode;
  int signed_frequency;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace perisolve
