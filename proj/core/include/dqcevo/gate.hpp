#pragma once

#include <cstdint>
#include <string_view>

namespace dqcevo {

/// The four basis gate kinds every circuit in this library is built from.
/// RZ is the only parameterized kind; CX is the only two-qubit kind.
enum class GateKind : std::uint8_t { X, SX, RZ, CX };

std::string_view to_string(GateKind kind);

/// Wraps an angle into the canonical range [0, 2*pi). Shifting an RZ angle
/// by 2*pi only changes the global phase, which none of the metrics in this
/// library observe, so canonical storage makes gate equality well-defined.
double canonical_angle(double radians);

/// One genome element. Construct through the factory functions, which
/// validate operands; direct field access is for reading.
///
/// Single-qubit gates leave `qubit1` at -1. For CX, `qubit0` is the control
/// and `qubit1` the target. The angle is meaningful only for RZ and is kept
/// canonical in [0, 2*pi).
struct Gate {
  GateKind kind = GateKind::X;
  std::int16_t qubit0 = 0;
  std::int16_t qubit1 = -1;
  double angle = 0.0;

  static Gate x(int qubit);
  static Gate sx(int qubit);
  static Gate rz(int qubit, double angle);
  static Gate cx(int control, int target);

  bool is_two_qubit() const { return kind == GateKind::CX; }
  int control() const { return qubit0; }
  int target() const { return qubit1; }
  int max_qubit() const { return qubit1 > qubit0 ? qubit1 : qubit0; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

}  // namespace dqcevo
