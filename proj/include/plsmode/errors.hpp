#pragma once

#include <stdexcept>
#include <string>

namespace plsmode {

// Thrown when a closed-form evaluation has lost too many digits to
// cancellation to be trusted; callers should switch to the quadrature path.
class numerical_instability_error : public std::runtime_error {
public:
    explicit numerical_instability_error(const std::string& msg)
        : std::runtime_error(msg) {}
};

// Thrown when an adaptive quadrature or root finder stops short of its
// target accuracy. Carries the accuracy it did achieve.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& msg, double achieved)
        : std::runtime_error(msg + " (achieved error " + std::to_string(achieved) + ")"),
          achieved_error(achieved) {}

    double achieved_error;
};

}  // namespace plsmode
