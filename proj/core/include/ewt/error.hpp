#pragma once

#include <stdexcept>
#include <string>

namespace ewt {

enum class ErrorKind {
  NotPrime,
  ReducibleModulus,
  NoEmbedding,
  FieldTooLarge,
  PrecisionExhausted,
  ZeroSeries,
  Overflow,
  NotRegularInY,
  NoPuiseuxRoots,
  EdgeNotOnPolygon,
  WildRamification,
  NoParametrization,
  GluingInconsistency,
  PointOffTree,
  InconsistentDistances,
  WildCharacteristic,
  UncertainFactorization,
  ParseError,
  InvalidArgument,
  VanishesOnBranch,
  BoundTooSmall,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ewt
