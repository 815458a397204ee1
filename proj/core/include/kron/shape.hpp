#pragma once

#include <string>
#include <vector>

#include "kron/partition.hpp"

namespace kron {

// A continuous Young diagram boundary y = f(x), x >= 0, sampled at the
// midpoints of a uniform grid on [0, x_max]. Enclosed area is 1 up to the
// shape's stated tolerance. Default grid resolution is 1e-3 of the
// bounding box.
class ContinuousShape {
 public:
  // Plancherel limit curve, parametrized by
  //   x = (2/pi)(sin t - t cos t),  y = (2/pi)(sin t + (pi - t) cos t)
  // for t in [0, pi]; supported on [0, 2].
  static ContinuousShape lsvk_curve(double resolution = 1e-3);

  // Uniform-measure limit curve exp(-c x) + exp(-c y) = 1 with c = pi/sqrt(6),
  // truncated where the tail area drops below 1e-7.
  static ContinuousShape uniform_curve(double resolution = 1e-3);

  // The diagram of p rescaled by 1/sqrt(n); exact area 1.
  static ContinuousShape from_partition(const Partition& p, double resolution = 1e-3);

  // User-supplied boundary sampled at grid midpoints over [0, x_max].
  // Rejects shapes whose grid area differs from 1 by more than area_tolerance.
  static ContinuousShape from_samples(std::vector<double> heights, double x_max,
                                      double area_tolerance = 1e-2);

  double x_max() const { return x_max_; }
  double cell_width() const { return dx_; }
  const std::vector<double>& heights() const { return heights_; }

  // Best available area: analytic/quadrature value for the named curves
  // and partition shapes, grid sum for sampled ones.
  double area() const { return area_; }
  double grid_area() const;

  std::string name() const { return name_; }

 private:
  ContinuousShape() = default;

  std::vector<double> heights_;  // f at cell midpoints
  double x_max_ = 0;
  double dx_ = 0;
  double area_ = 0;
  std::string name_;
};

// L1 area between the sqrt(n)-rescaled diagram of p and the shape,
// accumulated over the shape's grid.
double rescaled_shape_distance(const Partition& p, const ContinuousShape& s);

}  // namespace kron
