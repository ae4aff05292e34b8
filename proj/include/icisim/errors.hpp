#pragma once

#include <stdexcept>
#include <string>

namespace icisim {

/// Malformed or inconsistent input (scenario fields, shapes, graph structure).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An equilibrium required by the analysis does not exist.
class InfeasibleError : public std::runtime_error {
public:
    enum class Kind {
        DroopCapacity,      // Delta (or Delta_N) <= 0
        UnbalancedTarget,   // 1^T r != 0 handed to the angle solver
        SecurityConstraint  // no angle solution inside (-pi/2, pi/2)^m
    };

    InfeasibleError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// The state left the region where the model is defined (omega <= 0).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace icisim
