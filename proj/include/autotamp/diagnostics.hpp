#pragma once

#include <string>
#include <vector>

namespace autotamp {

enum class Severity { Error, Warning };

enum class DiagCode {
  UnknownToken,
  ArityMismatch,
  UnknownRegion,
  MalformedInterval,
  UnbalancedStructure,
  SchemaError,
  InvariantViolation,
  SpeedViolation,
  TimeLimitViolation,
  EmptyWindow,
  Infeasible,
};

// A single error/warning record. The message names the offending token
// verbatim because it is fed back to the language model as-is.
struct Diagnostic {
  Severity severity = Severity::Error;
  DiagCode code = DiagCode::SchemaError;
  std::string message;
  int token_index = -1;
};

std::string to_string(DiagCode code);

// One line per diagnostic: "error[unknown-token] @3: ...".
std::string render(const std::vector<Diagnostic>& diags);

inline Diagnostic make_error(DiagCode code, std::string message, int token_index = -1) {
  return Diagnostic{Severity::Error, code, std::move(message), token_index};
}

}  // namespace autotamp
