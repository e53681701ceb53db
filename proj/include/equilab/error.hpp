#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace equilab {

// All library failures carry a stable kind string so callers (CLI, tests) can
// dispatch without parsing prose. Kinds in use: "quadrature-failure",
// "domain-error", "resolution-error", "degenerate-input", "chart-error",
// "lattice-error".
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

    static Error domain(const std::string& m) { return Error("domain-error", m); }
    static Error resolution(const std::string& m) { return Error("resolution-error", m); }
    static Error degenerate(const std::string& m) { return Error("degenerate-input", m); }
    static Error chart(const std::string& m) { return Error("chart-error", m); }
    static Error lattice(const std::string& m) { return Error("lattice-error", m); }

private:
    std::string kind_;
};

// Thrown when an adaptive rule exhausts its refinement budget; carries the
// error estimate actually reached so callers can decide whether to retry
// with a looser tolerance.
class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& message, double achieved)
        : Error("quadrature-failure",
                message + " (achieved error estimate " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}

    double achieved_error() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace equilab
