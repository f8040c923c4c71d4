#ifndef AEQTS_QREG_HPP
#define AEQTS_QREG_HPP

#include <cstdint>
#include <vector>

#include "aeqts/rng.hpp"

namespace aeqts {

// Real-amplitude qubit; alpha^2 + beta^2 stays 1 under rotation.
struct Qubit {
    double alpha = 0.0;
    double beta = 0.0;

    bool operator==(const Qubit&) const = default;
};

using QubitRegister = std::vector<Qubit>;

enum class Quadrant { FirstThird, SecondFourth };

// Signed rotation step produced by the lookup table. Magnitude never
// exceeds the base step theta; pair scaling only divides it down.
struct AngleDelta {
    double radians = 0.0;
};

// K qubits, all at (1/sqrt2, 1/sqrt2): every bit is a coin flip at first.
QubitRegister init_register(int k);

// One bit per qubit, 1 with probability beta^2. Consumes exactly one
// uniform draw per qubit, in index order.
std::vector<std::uint8_t> measure(const QubitRegister& reg, Rng& rng);

Qubit rotate(const Qubit& q, AngleDelta delta);

// FirstThird iff alpha*beta >= 0. Axis-aligned amplitudes count as
// FirstThird, which keeps the initial state's classification stable.
Quadrant quadrant(const Qubit& q);

// Rotation lookup: zero when the best and the worst agree on the bit
// (the qubit is tabooed this pair), otherwise theta signed so the rotation
// pulls the measurement probability toward the best solution's bit.
AngleDelta lookup_delta(int best_bit, int worst_bit, Quadrant quad, double theta);

}  // namespace aeqts

#endif  // AEQTS_QREG_HPP
