#include "dqcevo/gate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dqcevo {

namespace {

constexpr std::int16_t kMaxQubitIndex = 16383;

std::int16_t checked_qubit(int qubit) {
  if (qubit < 0 || qubit > kMaxQubitIndex) {
    throw std::invalid_argument("qubit index out of range: " + std::to_string(qubit));
  }
  return static_cast<std::int16_t>(qubit);
}

}  // namespace

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X:
      return "x";
    case GateKind::SX:
      return "sx";
    case GateKind::RZ:
      return "rz";
    case GateKind::CX:
      return "cx";
  }
  return "?";
}

double canonical_angle(double radians) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!std::isfinite(radians)) {
    throw std::invalid_argument("rotation angle must be finite");
  }
  double wrapped = std::fmod(radians, two_pi);
  if (wrapped < 0.0) {
    wrapped += two_pi;
  }
  if (wrapped >= two_pi) {
    wrapped = 0.0;  // rounding at the seam maps 2*pi back to 0
  }
  return wrapped;
}

Gate Gate::x(int qubit) { return Gate{GateKind::X, checked_qubit(qubit), -1, 0.0}; }

Gate Gate::sx(int qubit) { return Gate{GateKind::SX, checked_qubit(qubit), -1, 0.0}; }

Gate Gate::rz(int qubit, double angle) {
  return Gate{GateKind::RZ, checked_qubit(qubit), -1, canonical_angle(angle)};
}

Gate Gate::cx(int control, int target) {
  if (control == target) {
    throw std::invalid_argument("cx control and target must be distinct");
  }
  return Gate{GateKind::CX, checked_qubit(control), checked_qubit(target), 0.0};
}

}  // namespace dqcevo
