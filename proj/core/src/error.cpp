#include "nccw/error.hpp"

namespace nccw {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SizeOverflow: return "SizeOverflow";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ComplexViolation: return "ComplexViolation";
    case ErrorKind::EndpointPairAtHigherStage: return "EndpointPairAtHigherStage";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotACocycleMap: return "NotACocycleMap";
    case ErrorKind::InvalidMorphism: return "InvalidMorphism";
    case ErrorKind::UnresolvedExtension: return "UnresolvedExtension";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string compose_message(ErrorKind kind, const std::string& message, std::optional<int> where) {
  std::string out(to_string(kind));
  if (where) out += "(" + std::to_string(*where) + ")";
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string message, std::optional<int> where)
    : std::runtime_error(compose_message(kind, message, where)), kind_(kind), where_(where) {}

}  // namespace nccw
