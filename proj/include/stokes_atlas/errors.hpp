#pragma once

#include <stdexcept>
#include <string>

namespace stokes_atlas {

// Failure classes map onto CLI exit codes: Usage -> 4, Boundary -> 2,
// Numerical -> 3. Internal is a bug and also exits 3.
enum class ErrorClass { Usage, Boundary, Numerical, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string msg)
      : std::runtime_error(std::move(msg)), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }

 private:
  ErrorClass cls_;
};

inline Error usage_error(std::string msg) {
  return Error(ErrorClass::Usage, std::move(msg));
}
inline Error boundary_error(std::string msg) {
  return Error(ErrorClass::Boundary, std::move(msg));
}
inline Error numerical_error(std::string msg) {
  return Error(ErrorClass::Numerical, std::move(msg));
}
inline Error internal_error(std::string msg) {
  return Error(ErrorClass::Internal, std::move(msg));
}

}  // namespace stokes_atlas
