#pragma once

#include <stdexcept>
#include <string>

namespace qlb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// dimension or entry count beyond the configured cap
struct SizeError : Error {
  using Error::Error;
};

// argument outside the range a bound or construction accepts
struct ParameterError : Error {
  using Error::Error;
};

// caller broke a documented precondition (non-Hermitian, non-unitary, ...)
struct ContractError : Error {
  using Error::Error;
};

struct SingularityError : Error {
  using Error::Error;
};

}  // namespace qlb
