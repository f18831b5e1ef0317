#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace lel {

// Error taxonomy shared by the whole library. The C API maps these onto
// integer status codes; inside the C++ core they are ordinary exceptions.
enum class ErrorCode : int {
    ok = 0,
    invalid_argument = 1,   // bad parameters, violated preconditions
    numeric = 2,            // quadrature/inversion failed to converge
    io = 3,                 // file read/write problems
    unsupported = 4,        // configuration outside the library's scope
    internal = 5,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
    throw Error(ErrorCode::invalid_argument, what);
}
[[noreturn]] inline void throw_numeric(const std::string& what) {
    throw Error(ErrorCode::numeric, what);
}
[[noreturn]] inline void throw_io(const std::string& what) {
    throw Error(ErrorCode::io, what);
}
[[noreturn]] inline void throw_unsupported(const std::string& what) {
    throw Error(ErrorCode::unsupported, what);
}

constexpr double kPi = 3.14159265358979323846;

// Surface measure of the unit sphere in R^d: 2 pi^{d/2} / Gamma(d/2).
inline double unit_sphere_surface(int dim) {
    return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

}  // namespace lel
