#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lorlie {

enum class ErrorKind {
  degenerate_metric,
  not_isotropic,
  not_lorentzian,
  shape_mismatch,
  singular_matrix,
  singular_basis,
  not_a_lie_algebra,
  hypothesis_failed,
  nondegenerate_subspace,
  not_admissible,
  requires_exact_mode,
  cross_check_mismatch,
  parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can translate it into a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a theorem's hypothesis does not hold for the input.
class HypothesisFailed : public Error {
 public:
  explicit HypothesisFailed(std::string hypothesis)
      : Error(ErrorKind::hypothesis_failed,
              "hypothesis failed: " + hypothesis),
        hypothesis_(std::move(hypothesis)) {}

  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

}  // namespace lorlie
