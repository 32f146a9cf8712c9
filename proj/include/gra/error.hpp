#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gra {

enum class ErrorKind {
  invalid_order,
  not_a_group,
  not_a_subgroup,
  not_normal,
  incompatible_quotients,
  not_an_isomorphism,
  not_related,
  invalid_frame,
  not_a_frame,
  frame_mismatch,
  invalid_atom,
  condition_violation,
  parse_error,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_order: return "invalid-order";
    case ErrorKind::not_a_group: return "not-a-group";
    case ErrorKind::not_a_subgroup: return "not-a-subgroup";
    case ErrorKind::not_normal: return "not-normal";
    case ErrorKind::incompatible_quotients: return "incompatible-quotients";
    case ErrorKind::not_an_isomorphism: return "not-an-isomorphism";
    case ErrorKind::not_related: return "not-related";
    case ErrorKind::invalid_frame: return "invalid-frame";
    case ErrorKind::not_a_frame: return "not-a-frame";
    case ErrorKind::frame_mismatch: return "frame-mismatch";
    case ErrorKind::invalid_atom: return "invalid-atom";
    case ErrorKind::condition_violation: return "condition-violation";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

/// Every failure raised by the library. The message carries the witness
/// (indices, elements, line numbers) that made the operation fail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gra
