#include "sawom/optoelastics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sawom/bessel.hpp"
#include "sawom/constants.hpp"
#include "sawom/errors.hpp"

namespace sawom {

std::string_view to_string(Polarization p) { return p == Polarization::X ? "X" : "Z"; }

double refractive_index_shift(double elong_yy, double shear_yz, Polarization pol,
                              const MaterialProperties& m) {
  if (pol == Polarization::Z) {
    return -0.5 * m.n_e * m.n_e * m.n_e * m.tensor.p31 * elong_yy;
  }
  return -0.5 * m.n_o * m.n_o * m.n_o * (m.tensor.p12 * elong_yy + m.tensor.p14 * shear_yz);
}

PhaseMap integrated_phase_map(const ModeField& mode, const MaterialProperties& m, Polarization pol,
                              double lambda_opt, unsigned threads) {
  if (!(lambda_opt > 0.0)) throw ValidationError("invalid optical wavelength");
  const Grid2D& grid = mode.u.grid;
  if (grid.spacing() > mode.lambda_saw / 8.0) throw ValidationError("undersampled grid");

  PhaseMap out{Field2D{grid, std::vector<double>(grid.size())}, pol, lambda_opt};
  const double k_opt = constants::two_pi / lambda_opt;
  const std::size_t n = grid.points();
  const auto& u = mode.u.values;

  if (pol == Polarization::Z) {
    const double c = k_opt * 0.5 * m.n_e * m.n_e * m.n_e * m.tensor.p31;
    parallel_rows(n, threads, [&](std::size_t ix) {
      for (std::size_t iz = 0; iz < n; ++iz) {
        const std::size_t k = grid.index(ix, iz);
        out.phi.values[k] = c * u[k];
      }
    });
    return out;
  }

  const double c = k_opt * 0.5 * m.n_o * m.n_o * m.n_o;
  const double h = grid.spacing();
  const double shear = m.tensor.p14 * mode.decay_depth;
  parallel_rows(n, threads, [&](std::size_t ix) {
    const double* row = u.data() + grid.index(ix, 0);
    for (std::size_t iz = 0; iz < n; ++iz) {
      double du_dz = 0.0;
      if (iz == 0) {
        du_dz = (-3.0 * row[0] + 4.0 * row[1] - row[2]) / (2.0 * h);
      } else if (iz == n - 1) {
        du_dz = (3.0 * row[n - 1] - 4.0 * row[n - 2] + row[n - 3]) / (2.0 * h);
      } else {
        du_dz = (row[iz + 1] - row[iz - 1]) / (2.0 * h);
      }
      out.phi.values[grid.index(ix, iz)] = c * (m.tensor.p12 * row[iz] - shear * du_dz);
    }
  });
  return out;
}

double beam_sampled_phase(const PhaseMap& map, const BeamSpot& spot) {
  const Grid2D& grid = map.phi.grid;
  if (!grid.contains(spot.x, spot.z)) throw ValidationError("spot out of bounds");
  if (!(spot.waist >= grid.spacing() * (1.0 - 1e-12))) {
    throw ValidationError("beam waist smaller than grid spacing");
  }
  // Weights beyond 4 waists are below e^-32.
  const double reach = 4.0 * spot.waist;
  const auto lo = [&](double c) { return grid.nearest(c - reach); };
  const auto hi = [&](double c) { return grid.nearest(c + reach); };
  const double inv_w2 = 2.0 / (spot.waist * spot.waist);

  double weight = 0.0;
  double sum = 0.0;
  for (std::size_t ix = lo(spot.x); ix <= hi(spot.x); ++ix) {
    const double dx = grid.coordinate(ix) - spot.x;
    for (std::size_t iz = lo(spot.z); iz <= hi(spot.z); ++iz) {
      const double dz = grid.coordinate(iz) - spot.z;
      const double w = std::exp(-(dx * dx + dz * dz) * inv_w2);
      weight += w;
      sum += w * map.phi.at(ix, iz);
    }
  }
  return std::fabs(sum / weight);
}

Selectivity polarization_selectivity(const ModeField& mode, const MaterialProperties& material,
                                     const BeamSpot& spot, double lambda_opt) {
  const PhaseMap x_map = integrated_phase_map(mode, material, Polarization::X, lambda_opt);
  const PhaseMap z_map = integrated_phase_map(mode, material, Polarization::Z, lambda_opt);
  Selectivity s;
  s.phi_x = beam_sampled_phase(x_map, spot);
  s.phi_z = beam_sampled_phase(z_map, spot);
  if (s.phi_z == 0.0) {
    s.infinite = true;
    s.ratio = std::numeric_limits<double>::infinity();
  } else {
    const double r = s.phi_x / s.phi_z;
    s.ratio = r * r;
  }
  return s;
}

Field2D sideband_power_map(const PhaseMap& map) {
  Field2D out{map.phi.grid, std::vector<double>(map.phi.values.size())};
  double peak = 0.0;
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const double j = bessel::j1(map.phi.values[k]);
    out.values[k] = j * j;
    peak = std::max(peak, out.values[k]);
  }
  if (peak > 0.0) {
    for (double& v : out.values) v /= peak;
  }
  return out;
}

double axis_argmax(const Field2D& field, Axis axis) {
  const Grid2D& grid = field.grid;
  const std::size_t centre = grid.nearest(0.0);
  std::size_t best = centre;
  double best_value = -1.0;
  for (std::size_t i = 0; i < grid.points(); ++i) {
    const double v = std::fabs(axis == Axis::Z ? field.at(centre, i) : field.at(i, centre));
    const bool closer = std::fabs(grid.coordinate(i)) < std::fabs(grid.coordinate(best));
    if (v > best_value || (v == best_value && closer)) {
      best_value = v;
      best = i;
    }
  }
  return grid.coordinate(best);
}

}  // namespace sawom
