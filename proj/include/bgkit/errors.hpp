#pragma once

#include <stdexcept>
#include <string>

namespace bgkit {

// Argument outside the mathematical domain of an operation (pole, r <= 0, |xi| >= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A series hit its term cap before meeting the relative tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Quadrature could not certify the requested tolerance. The best estimate is kept.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best_estimate, double err_bound)
        : std::runtime_error(what), best_estimate_(best_estimate), err_bound_(err_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double err_bound() const noexcept { return err_bound_; }

private:
    double best_estimate_;
    double err_bound_;
};

}  // namespace bgkit
