#pragma once

#include <optional>
#include <string>
#include <vector>

#include "approx/fourier.hpp"
#include "approx/types.hpp"

namespace approx {

/// Closed curve with equispaced parameter samples and a trigonometric
/// interpolant. Positively oriented (signed area > 0) and simple within
/// sample resolution.
class JordanCurve {
public:
  JordanCurve() = default;
  // samples: z(2*pi*j/N), j = 0..N-1, closed implicitly.
  explicit JordanCurve(const CVec& samples);

  static JordanCurve circle(Complex center, double radius, int n = 256);
  static JordanCurve ellipse(Complex center, double a, double b, int n = 256);

  Complex point(double t) const { return interp_.eval(t); }
  Complex tangent(double t) const { return interp_.deriv(t); }
  Complex second(double t) const { return interp_.second_deriv(t); }

  int sample_count() const { return static_cast<int>(samples_.size()); }
  const CVec& samples() const { return samples_; }
  const TrigInterp& interp() const { return interp_; }
  const RVec& arclength_table() const { return arclen_; }
  double length() const { return total_length_; }

  double signed_area() const;
  int winding_number(Complex z) const;
  bool contains(Complex z) const { return winding_number(z) != 0; }
  bool is_simple_polyline() const;

  // Cumulative arclength at parameter t (monotone), and its inverse.
  double arclength_at(double t) const;
  double param_at_arclength(double s) const;

  // Distance from z to the sampled polyline.
  double distance_to(Complex z) const;

  void bounding_box(double& x0, double& y0, double& x1, double& y1) const;

  // Low-pass resample: keep at most `modes` frequencies, emit n samples.
  JordanCurve smoothed(int modes, int n) const;

private:
  CVec samples_;
  TrigInterp interp_;
  RVec arclen_;
  double total_length_ = 0;
};

/// Boolean raster over a bounding box; cell (i,j) covers
/// [x0+i*h, x0+(i+1)*h] x [y0+j*h, y0+(j+1)*h].
struct Raster {
  double x0 = 0, y0 = 0, h = 1;
  int nx = 0, ny = 0;
  std::vector<uint8_t> cells;

  bool at(int i, int j) const { return cells[static_cast<size_t>(j) * nx + i] != 0; }
  void set(int i, int j, bool v) { cells[static_cast<size_t>(j) * nx + i] = v ? 1 : 0; }
  Complex center(int i, int j) const { return {x0 + (i + 0.5) * h, y0 + (j + 0.5) * h}; }
  bool locate(Complex z, int& i, int& j) const;
  size_t count() const;
};

/// Compact plane set: filled Jordan curves and/or points, plus a raster for
/// hull / metric queries.
struct CompactSetRep {
  std::vector<JordanCurve> curves;
  std::vector<Complex> points;
  Raster raster;

  bool member(Complex z) const;
  bool empty() const { return curves.empty() && points.empty(); }
};

/// Union of analytic Jordan domains: one outer curve, optional holes inside.
struct DomainSpec {
  JordanCurve outer;
  std::vector<JordanCurve> holes;
  std::string label;

  bool contains(Complex z) const;
  void validate() const;  // holes disjoint, inside outer
};

// Builds the raster representation. cell = grid spacing; margin cells >= 4.
CompactSetRep make_compact_set(std::vector<JordanCurve> curves, std::vector<Complex> points,
                               double cell);

CompactSetRep hull(const CompactSetRep& set);
CompactSetRep eps_neighborhood(const CompactSetRep& set, double eps);
double hausdorff_distance(const CompactSetRep& X, const CompactSetRep& Y);
bool is_full(const CompactSetRep& set);

// Squared Euclidean distance transform of a boolean grid (distance in cells to
// the nearest set cell). Felzenszwalb-Huttenlocher, exact.
std::vector<double> distance_transform(const Raster& r);

}  // namespace approx
