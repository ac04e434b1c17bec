#pragma once

#include <stdexcept>
#include <string>

namespace unruh {

enum class Wedge { I, II };

/// Physical parameters of the pair of Rindler wedges: acceleration parameter
/// a, field mass m (natural units, c = hbar = 1), and the signed separation D
/// between the wedge apexes (at x = +D/2 and x = -D/2).
///
/// D < 0 makes the wedges overlap; it is accepted, but mode choices are then
/// the caller's responsibility (see wedge_overlap_diagnostic).
struct RindlerGeometry {
  double a = 1.0;
  double m = 1.0;
  double D = 0.0;

  void validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("RindlerGeometry: a must be > 0, got " + std::to_string(a));
    if (!(m > 0.0)) throw std::invalid_argument("RindlerGeometry: m must be > 0, got " + std::to_string(m));
  }

  /// Apex position of the given wedge on the t = 0 slice.
  double apex(Wedge w) const { return w == Wedge::I ? 0.5 * D : -0.5 * D; }

  /// Distance from x to the wedge apex, measured into the wedge
  /// (positive inside the wedge, negative outside).
  double wedge_depth(Wedge w, double x) const {
    return w == Wedge::I ? x - apex(Wedge::I) : apex(Wedge::II) - x;
  }
};

}  // namespace unruh
