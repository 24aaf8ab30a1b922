#pragma once

#include <stdexcept>
#include <string>

namespace csft {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct CompositionError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct EnumerationError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct ContractLoopError : Error { using Error::Error; };
struct NotAnEdgeError : Error { using Error::Error; };
struct GluingError : Error { using Error::Error; };
struct SingularError : Error { using Error::Error; };
struct ClosedMorphismError : Error { using Error::Error; };
struct ContextError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace csft
