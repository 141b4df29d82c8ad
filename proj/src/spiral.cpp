#include "ksc/spiral.hpp"

#include "ksc/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace ksc {
namespace {

// Arc length of r = a + b theta measured from r = 0 as a function of r.
double arc_primitive(double r, double b) {
  const double h = std::sqrt(r * r + b * b);
  return (r * h + b * b * std::log(r + h)) / (2.0 * b);
}

double theta_at_arc_length(double s, const SpiralShape& shape, double s0,
                           double theta_hi) {
  double lo = shape.theta0;
  double hi = theta_hi;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double sm = arc_primitive(shape.a + shape.b * mid, shape.b) - s0;
    (sm < s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Dataset generate_two_spirals(Index n, double noise, std::uint64_t seed,
                             const SpiralShape& shape) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "spiral generator needs n >= 2");
  if (!(noise >= 0.0)) fail(ErrorKind::InvalidArgument, "noise must be nonnegative");
  if (!(shape.b > 0.0) || !(shape.turns > 0.0))
    fail(ErrorKind::InvalidArgument, "spiral shape needs b > 0 and turns > 0");

  const double theta_hi = shape.theta0 + shape.turns * 2.0 * std::numbers::pi;
  const double s0 = arc_primitive(shape.a + shape.b * shape.theta0, shape.b);
  const double length = arc_primitive(shape.a + shape.b * theta_hi, shape.b) - s0;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> along(0.0, length);
  std::normal_distribution<double> jitter(0.0, 1.0);

  Dataset out;
  out.rows.resize(n, 2);
  out.labels.emplace(static_cast<std::size_t>(n));
  const Index first_arm = (n + 1) / 2;
  for (Index i = 0; i < n; ++i) {
    const int arm = i < first_arm ? 0 : 1;
    const double theta = theta_at_arc_length(along(rng), shape, s0, theta_hi);
    const double r = shape.a + shape.b * theta;
    const double phase = theta + (arm == 1 ? std::numbers::pi : 0.0);
    const double nx = jitter(rng);
    const double ny = jitter(rng);
    out.rows(i, 0) = r * std::cos(phase) + noise * nx;
    out.rows(i, 1) = r * std::sin(phase) + noise * ny;
    (*out.labels)[static_cast<std::size_t>(i)] = arm;
  }
  return out;
}

}  // namespace ksc
