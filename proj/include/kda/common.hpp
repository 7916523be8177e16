#ifndef KDA_COMMON_HPP
#define KDA_COMMON_HPP

#include <stdexcept>
#include <string>

namespace kda {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown when W + ridge*I cannot be factorized reliably (condition
/// estimate above 1e14 or a failed Cholesky pivot). Carries the ridge
/// that was in effect so callers can report or retry with a larger one.
class SingularWithinClass : public Error {
public:
  SingularWithinClass(const std::string& what, double ridge)
      : Error(what), ridge_(ridge) {}
  double ridge() const { return ridge_; }

private:
  double ridge_;
};

} // namespace kda

#endif
