#pragma once

#include <string_view>

#include "sawom/acoustics.hpp"
#include "sawom/materials.hpp"

namespace sawom {

enum class Polarization { X, Z };

std::string_view to_string(Polarization p);

// Strain-induced index change for light polarised along X (ordinary) or
// Z (extraordinary), with u_y the only displacement component:
//   Z: dn = -1/2 n_e^3 p31 du_y/dy
//   X: dn = -1/2 n_o^3 (p12 du_y/dy + p14 du_y/dz)
[[nodiscard]] double refractive_index_shift(double elong_yy, double shear_yz, Polarization pol,
                                            const MaterialProperties& material);

// Depth-integrated optical phase modulation, sign retained.
struct PhaseMap {
  Field2D phi;  // rad
  Polarization polarization = Polarization::Z;
  double lambda_opt = 0.0;
};

// With u_y = U(x,z) exp(-y/d), integrating dn over y in [0, inf) gives
//   Z: (2 pi/lambda) (1/2 n_e^3 p31) U
//   X: (2 pi/lambda) (1/2 n_o^3) (p12 U - p14 d dU/dz)
// dU/dz by second-order central differences (one-sided at the edges).
// Throws ValidationError("undersampled grid") below 8 points per lambda_saw.
PhaseMap integrated_phase_map(const ModeField& mode, const MaterialProperties& material,
                              Polarization pol, double lambda_opt, unsigned threads = 1);

struct BeamSpot {
  double x = 0.0;
  double z = 0.0;
  double waist = 3.5e-6;  // 1/e^2 intensity radius
};

// |sum I phi / sum I| with I = exp(-2 r^2 / w^2) over the grid nodes.
[[nodiscard]] double beam_sampled_phase(const PhaseMap& map, const BeamSpot& spot);

struct Selectivity {
  double ratio = 0.0;  // (phi_X / phi_Z)^2, +inf when phi_Z == 0
  bool infinite = false;
  double phi_x = 0.0;
  double phi_z = 0.0;
};

[[nodiscard]] Selectivity polarization_selectivity(const ModeField& mode,
                                                   const MaterialProperties& material,
                                                   const BeamSpot& spot, double lambda_opt);

// Sideband power J1(phi)^2 normalised to the map maximum.
Field2D sideband_power_map(const PhaseMap& map);

// Coordinate along the given axis line through the origin (x = 0 for Axis::Z)
// where |field| peaks. Ties resolve to the smallest |coordinate|.
[[nodiscard]] double axis_argmax(const Field2D& field, Axis axis);

}  // namespace sawom
