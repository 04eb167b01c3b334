#pragma once

#include <stdexcept>
#include <string>

namespace repadvice {

// Parameter outside a model domain (sigma, prior, wage, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// The 2x2 law of (A, X_theta) implied by the parameters has a cell outside [0, 1].
class InfeasibleError : public DomainError {
 public:
  explicit InfeasibleError(const std::string& what) : DomainError(what) {}
};

}  // namespace repadvice
