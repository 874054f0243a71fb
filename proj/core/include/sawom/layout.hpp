#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sawom/materials.hpp"

namespace sawom {

enum class RingRole { IdtPortA, IdtPortB, Mirror };

std::string_view to_string(RingRole role);

struct PolarSample {
  double theta = 0.0;  // rad
  double r = 0.0;      // m
};

// One electrode edge. Contours 2j and 2j+1 bound electrode j.
struct Contour {
  std::size_t ring = 0;
  RingRole role = RingRole::Mirror;
  std::vector<PolarSample> samples;
};

struct ResonatorGeometry {
  double lambda_saw = 0.0;
  double electrode_width = 0.0;
  double electrode_gap = 0.0;
  std::size_t idt_pairs = 0;
  std::size_t mirror_pairs = 0;
  std::vector<Contour> contours;  // innermost first
  double r_eff = 0.0;             // mean radius of the outermost contour
};

struct LayoutSpec {
  double lambda_saw = 40e-6;
  std::size_t idt_pairs = 5;
  std::size_t mirror_pairs = 25;
  double inner_clear_radius = 300e-6;
  std::size_t samples_per_contour = 720;
};

// Concentric focusing IDT + Bragg mirror. Electrodes and gaps are lambda/4
// wide along theta = 0; each contour follows
//   r_n(theta) = (inner_clear_radius + n lambda(theta)/4) * v(theta)/v0,
// lambda(theta) = v(theta)/f. The inner 2*idt_pairs electrodes alternate IDT
// ports, the next mirror_pairs electrodes are Bragg strips.
ResonatorGeometry generate_focusing_circuit(const MaterialProperties& material,
                                            const LayoutSpec& spec);

// Throws ComputationError("contour collision ...") naming the first ring
// that is not strictly outside its predecessor at every sample, or that is
// not a simple closed polar curve.
void validate_geometry(const ResonatorGeometry& geometry);

enum class GeometryFormat { Svg, Csv };

std::string export_geometry(const ResonatorGeometry& geometry, GeometryFormat format);

}  // namespace sawom
