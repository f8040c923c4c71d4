#include "aeqts/qreg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aeqts {

QubitRegister init_register(int k) {
    if (k < 1) throw std::invalid_argument("init_register: need at least one qubit");
    constexpr double amp = 1.0 / std::numbers::sqrt2;
    return QubitRegister(static_cast<std::size_t>(k), Qubit{amp, amp});
}

std::vector<std::uint8_t> measure(const QubitRegister& reg, Rng& rng) {
    std::vector<std::uint8_t> bits(reg.size());
    for (std::size_t i = 0; i < reg.size(); ++i) {
        const double p_one = reg[i].beta * reg[i].beta;
        bits[i] = rng.next_double() < p_one ? 1 : 0;
    }
    return bits;
}

Qubit rotate(const Qubit& q, AngleDelta delta) {
    const double c = std::cos(delta.radians);
    const double s = std::sin(delta.radians);
    return {c * q.alpha - s * q.beta, s * q.alpha + c * q.beta};
}

Quadrant quadrant(const Qubit& q) {
    return q.alpha * q.beta >= 0.0 ? Quadrant::FirstThird : Quadrant::SecondFourth;
}

AngleDelta lookup_delta(int best_bit, int worst_bit, Quadrant quad, double theta) {
    if (best_bit == worst_bit) return {0.0};
    const double toward_one = best_bit == 1 ? theta : -theta;
    return {quad == Quadrant::FirstThird ? toward_one : -toward_one};
}

}  // namespace aeqts
