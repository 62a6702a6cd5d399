#include "bnfkit/errors.hpp"

#include <sstream>

namespace bnfkit {

namespace {

std::string small_divisor_message(const std::vector<int>& k, double divisor, int degree) {
  std::ostringstream os;
  os << "small divisor at degree " << degree << ": k = (";
  for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
  os << "), |k.omega| = " << divisor;
  return os.str();
}

}  // namespace

SmallDivisorError::SmallDivisorError(std::vector<int> k, double divisor, int degree)
    : Error(small_divisor_message(k, divisor, degree)),
      k_(std::move(k)),
      divisor_(divisor),
      degree_(degree) {}

StepFailureError::StepFailureError(double time, const std::string& what)
    : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}

}  // namespace bnfkit
