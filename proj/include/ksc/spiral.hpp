#pragma once

#include "ksc/types.hpp"

#include <cstdint>

namespace ksc {

/// Two Archimedean arms r(theta) = a + b theta, theta in
/// [theta0, theta0 + turns * 2 pi], the second arm rotated by pi.
/// The defaults give a bounding box of roughly [-2.9, 2.9]^2, a scale at
/// which an RBF kernel with gamma = 0.006 resolves the arms.
struct SpiralShape {
  double a = 0.3;
  double b = 0.15;
  double theta0 = 1.5707963267948966;
  double turns = 2.5;
};

/// ceil(n/2) points on arm 0, floor(n/2) on arm 1, uniform in arc length,
/// plus isotropic Gaussian noise of standard deviation `noise`. Labels are
/// the arm index. Bit-identical for equal arguments.
Dataset generate_two_spirals(Index n, double noise, std::uint64_t seed,
                             const SpiralShape& shape = {});

}  // namespace ksc
