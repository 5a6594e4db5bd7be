#pragma once

#include <stdexcept>
#include <string>

namespace algmod {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by operations that are defined only for some group ranks or sizes.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace algmod
