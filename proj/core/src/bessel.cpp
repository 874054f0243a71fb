#include "sawom/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sawom/errors.hpp"

namespace sawom::bessel {
namespace {

// sum_k (-1)^k (x^2/4)^k / (k! (k+order)!) in long double; the largest term
// near the crossover is ~1e6, which still leaves ~1e-13 absolute accuracy.
long double series(long double x, int order) {
  const long double q = x * x / 4.0L;
  long double term = 1.0L;
  for (int i = 1; i <= order; ++i) term /= i;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<long double>(k) * (k + order));
    sum += term;
    if (std::fabs(term) < std::numeric_limits<long double>::epsilon() * 1e-3L) break;
  }
  return sum;
}

// Hankel expansion: J_n(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi).
// Truncated at the smallest term, which at x = 17 is ~e^-34.
void hankel_pq(double x, int order, double& p, double& q) {
  const double mu = 4.0 * order * order;
  const double eight_x = 8.0 * x;
  p = 1.0;
  q = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 100; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * eight_x);
    const double mag = std::fabs(term);
    if (mag >= prev) break;
    prev = mag;
    // k odd -> Q series, k even -> P series; signs alternate within each.
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 1) {
      q += sign * term;
    } else {
      p += sign * term;
    }
    if (mag < 1e-17) break;
  }
}

}  // namespace

double j0(double x) {
  const double ax = std::fabs(x);
  if (ax < kSeriesCrossover) return static_cast<double>(series(ax, 0));
  double p = 0.0;
  double q = 0.0;
  hankel_pq(ax, 0, p, q);
  const double c = std::cos(ax);
  const double s = std::sin(ax);
  // chi = x - pi/4
  const double cos_chi = (c + s) * std::numbers::sqrt2 / 2.0;
  const double sin_chi = (s - c) * std::numbers::sqrt2 / 2.0;
  return std::sqrt(2.0 / (std::numbers::pi * ax)) * (p * cos_chi - q * sin_chi);
}

double j1(double x) {
  const double ax = std::fabs(x);
  double value = 0.0;
  if (ax < kSeriesCrossover) {
    value = static_cast<double>(ax / 2.0L * series(ax, 1));
  } else {
    double p = 0.0;
    double q = 0.0;
    hankel_pq(ax, 1, p, q);
    const double c = std::cos(ax);
    const double s = std::sin(ax);
    // chi = x - 3 pi/4
    const double cos_chi = (s - c) * std::numbers::sqrt2 / 2.0;
    const double sin_chi = -(s + c) * std::numbers::sqrt2 / 2.0;
    value = std::sqrt(2.0 / (std::numbers::pi * ax)) * (p * cos_chi - q * sin_chi);
  }
  return x < 0.0 ? -value : value;
}

double j0_zero(unsigned n) {
  if (n == 0) throw ValidationError("J0 zeros are numbered from 1");
  const double beta = (n - 0.25) * std::numbers::pi;
  const double b8 = 8.0 * beta;
  double alpha = beta + 1.0 / b8 - 124.0 / (3.0 * b8 * b8 * b8) +
                 120928.0 / (15.0 * std::pow(b8, 5));
  for (int it = 0; it < 20; ++it) {
    // d/dx J0 = -J1
    const double step = j0(alpha) / j1(alpha);
    alpha += step;
    if (std::fabs(step) < 1e-15 * alpha) break;
  }
  return alpha;
}

}  // namespace sawom::bessel
