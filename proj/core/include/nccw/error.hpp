#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nccw {

enum class ErrorKind {
  SizeOverflow,
  ShapeMismatch,
  ComplexViolation,
  EndpointPairAtHigherStage,
  OutOfRange,
  NotACocycleMap,
  InvalidMorphism,
  UnresolvedExtension,
  NotSimple,
  LimitExceeded,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every domain failure carries its kind and, where one exists, the offending
// index (block, stage, degree, or p of a bidegree).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::optional<int> where = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<int> where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::optional<int> where_;
};

}  // namespace nccw
