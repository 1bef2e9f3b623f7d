#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

class NotImplementedError : public Error {
public:
  using Error::Error;
};

/// A documented precondition of an experiment does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Malformed or mismatched input data (lengths, files, formats).
class DataError : public Error {
public:
  using Error::Error;
};

class UnknownModelError : public Error {
public:
  using Error::Error;
};

/// Base for failures of a numerical method (exit code 4 in the CLI).
class NumericalError : public Error {
public:
  using Error::Error;
};

class QuadratureError : public NumericalError {
public:
  QuadratureError(const std::string& what, double achieved)
      : NumericalError(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

class DivergedError : public NumericalError {
public:
  DivergedError(const std::string& what, double last_good_time)
      : NumericalError(what), last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }

private:
  double last_good_time_;
};

class NonContractionError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class MaxIterError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class InsufficientSamplesError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class BelowFloorError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

}  // namespace fracwave
