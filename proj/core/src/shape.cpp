#include "kron/shape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kron/quadrature.hpp"

namespace kron {

namespace {

double simpson_estimate(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(const std::function<double(double)>& f, double a, double fa,
                       double b, double fb, double m, double fm, double whole,
                       double tolerance, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson_estimate(a, fa, m, fm, flm);
  double right = simpson_estimate(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tolerance)
    return left + right + delta / 15.0;
  return simpson_recurse(f, a, fa, m, fm, lm, flm, left, tolerance / 2, depth - 1) +
         simpson_recurse(f, m, fm, b, fb, rm, frm, right, tolerance / 2, depth - 1);
}

constexpr double kPi = std::numbers::pi;

// LSVK parametrization on t in [0, pi].
double lsvk_x(double t) { return 2.0 / kPi * (std::sin(t) - t * std::cos(t)); }
double lsvk_y(double t) { return 2.0 / kPi * (std::sin(t) + (kPi - t) * std::cos(t)); }

// x(t) is increasing; invert by bisection.
double lsvk_t_for_x(double x) {
  double lo = 0.0, hi = kPi;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (lsvk_x(mid) < x ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tolerance) {
  if (!(tolerance > 0)) throw std::invalid_argument("adaptive_simpson: tolerance must be positive");
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = simpson_estimate(a, fa, b, fb, fm);
  return simpson_recurse(f, a, fa, b, fb, m, fm, whole, tolerance, 60);
}

ContinuousShape ContinuousShape::lsvk_curve(double resolution) {
  if (!(resolution > 0 && resolution < 1)) throw std::invalid_argument("lsvk_curve: bad resolution");
  ContinuousShape s;
  s.name_ = "lsvk";
  s.x_max_ = 2.0;
  std::size_t cells = static_cast<std::size_t>(std::llround(1.0 / resolution));
  s.dx_ = s.x_max_ / static_cast<double>(cells);
  s.heights_.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    double x = (static_cast<double>(i) + 0.5) * s.dx_;
    s.heights_[i] = lsvk_y(lsvk_t_for_x(x));
  }
  // Area via the parametric integral; smooth integrand, so the quadrature
  // tolerance 1e-9 is easily met.
  s.area_ = adaptive_simpson(
      [](double t) { return lsvk_y(t) * 2.0 / kPi * (t * std::sin(t)); }, 0.0, kPi, 1e-9);
  return s;
}

ContinuousShape ContinuousShape::uniform_curve(double resolution) {
  if (!(resolution > 0 && resolution < 1)) throw std::invalid_argument("uniform_curve: bad resolution");
  const double c = kPi / std::sqrt(6.0);
  // Tail area beyond X is ~ exp(-cX)/c^2; keep it below 1e-7.
  const double x_max = std::log(1e7 / (c * c)) / c;
  ContinuousShape s;
  s.name_ = "uniform";
  s.x_max_ = x_max;
  std::size_t cells = static_cast<std::size_t>(std::llround(1.0 / resolution));
  s.dx_ = s.x_max_ / static_cast<double>(cells);
  auto curve = [c](double x) {
    double u = 1.0 - std::exp(-c * x);
    return u <= 0 ? 0.0 : -std::log(u) / c;
  };
  s.heights_.resize(cells);
  for (std::size_t i = 0; i < cells; ++i)
    s.heights_[i] = curve((static_cast<double>(i) + 0.5) * s.dx_);
  // The integrand has a log singularity at 0; integrable, and the adaptive
  // rule converges to the analytic area 1 minus the truncated tail.
  s.area_ = adaptive_simpson(curve, 1e-12, x_max, 1e-8);
  return s;
}

ContinuousShape ContinuousShape::from_partition(const Partition& p, double resolution) {
  if (p.empty()) throw std::invalid_argument("from_partition: partition must be nonempty");
  if (!(resolution > 0 && resolution < 1)) throw std::invalid_argument("from_partition: bad resolution");
  double scale = std::sqrt(static_cast<double>(p.size()));
  ContinuousShape s;
  s.name_ = "partition";
  s.x_max_ = static_cast<double>(p.rows()[0]) / scale;
  std::size_t cells = static_cast<std::size_t>(std::llround(1.0 / resolution));
  s.dx_ = s.x_max_ / static_cast<double>(cells);
  Partition cols = conjugate(p);
  s.heights_.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    double x = (static_cast<double>(i) + 0.5) * s.dx_;
    auto col = static_cast<std::size_t>(std::floor(x * scale));
    s.heights_[i] = static_cast<double>(cols.row(col)) / scale;
  }
  s.area_ = 1.0;  // exact: n boxes rescaled by 1/sqrt(n) in each direction
  return s;
}

ContinuousShape ContinuousShape::from_samples(std::vector<double> heights, double x_max,
                                              double area_tolerance) {
  if (heights.empty() || !(x_max > 0))
    throw std::invalid_argument("from_samples: need samples and positive x_max");
  ContinuousShape s;
  s.name_ = "sampled";
  s.x_max_ = x_max;
  s.dx_ = x_max / static_cast<double>(heights.size());
  s.heights_ = std::move(heights);
  s.area_ = s.grid_area();
  if (std::abs(s.area_ - 1.0) > area_tolerance)
    throw std::invalid_argument("from_samples: enclosed area differs from 1 beyond tolerance");
  return s;
}

double ContinuousShape::grid_area() const {
  double sum = 0;
  for (double h : heights_) sum += h;
  return sum * dx_;
}

double rescaled_shape_distance(const Partition& p, const ContinuousShape& s) {
  if (p.empty()) throw std::invalid_argument("rescaled_shape_distance: partition must be nonempty");
  double scale = std::sqrt(static_cast<double>(p.size()));
  Partition cols = conjugate(p);
  double sum = 0;
  const auto& h = s.heights();
  for (std::size_t i = 0; i < h.size(); ++i) {
    double x = (static_cast<double>(i) + 0.5) * s.cell_width();
    auto col = static_cast<std::size_t>(std::floor(x * scale));
    double fp = static_cast<double>(cols.row(col)) / scale;
    sum += std::abs(fp - h[i]);
  }
  return sum * s.cell_width();
}

}  // namespace kron
