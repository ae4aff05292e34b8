#pragma once

namespace icisim {

/// One classical fourth-order Runge-Kutta step of x' = rhs(x).
/// `State` is any vector-space value type (double, Eigen vector, ...).
template <class State, class Rhs>
State rk4_step(Rhs&& rhs, const State& x, double h) {
    const State k1 = rhs(x);
    const State k2 = rhs(State(x + (0.5 * h) * k1));
    const State k3 = rhs(State(x + (0.5 * h) * k2));
    const State k4 = rhs(State(x + h * k3));
    return State(x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace icisim
