#ifndef DALEMBERT_ERRORS_HPP
#define DALEMBERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dalembert
{

enum class ErrorCode
{
  InvalidArgument,
  CriticalParameter,
  BadGeometry,
  RegionMismatch,
  PositiveExponent,
  WavefrontSample,
  WavefrontProximity,
  QuadratureFailure,
  NoConvergence,
  Unstable,
  OutOfHorizon,
};

// All failures raised by the core carry one of the codes above; the C API maps
// them one-to-one onto dal_status values.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string &what)
{
  throw Error(code, what);
}

}  // namespace dalembert

#endif  // DALEMBERT_ERRORS_HPP
