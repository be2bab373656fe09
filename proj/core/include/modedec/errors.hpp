#pragma once

#include <stdexcept>
#include <string>

namespace modedec {

// Precondition violations on library inputs throw std::invalid_argument.
// A NumericalGuardError means the inputs were well-formed but a numerical
// safety check refused to proceed (undersampled modulation, a bisection that
// did not converge).
class NumericalGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modedec
