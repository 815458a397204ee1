#include "kron/measure.hpp"

#include <sstream>
#include <stdexcept>

namespace kron {

mpq_class plancherel_measure(const Support& s) {
  if (s.members.empty()) throw std::invalid_argument("plancherel_measure: empty support");
  mpz_class sum = 0;
  for (const auto& p : s.members) {
    mpz_class d = dimension(p);
    sum += d * d;
  }
  mpz_class nfact;
  mpz_fac_ui(nfact.get_mpz_t(), static_cast<unsigned long>(s.n));
  mpq_class q(sum, nfact);
  q.canonicalize();
  return q;
}

MeasuredSupport measured(Support s) {
  MeasuredSupport m;
  m.measure = plancherel_measure(s);
  m.support = std::move(s);
  return m;
}

std::string PigeonholeReport::to_string() const {
  std::ostringstream os;
  os << "M(V) = " << measure_v.get_str() << ", M(W) = " << measure_w.get_str();
  if (!applicable) {
    os << "; not applicable (measures sum to at most 1)";
  } else {
    os << "; M(V)+M(W) > 1, product " << (covered ? "covers" : "DOES NOT COVER")
       << " -> " << (passed() ? "pass" : "FAIL");
  }
  return os.str();
}

PigeonholeReport pigeonhole_check(const Support& v, const Support& w,
                                  KroneckerOracle& oracle) {
  if (v.n != w.n) throw std::invalid_argument("pigeonhole_check: size mismatch");
  PigeonholeReport report;
  report.measure_v = plancherel_measure(v);
  report.measure_w = plancherel_measure(w);
  if (report.measure_v + report.measure_w <= 1) return report;
  report.applicable = true;
  report.covered = oracle.covers(oracle.product_support({v, w}));
  return report;
}

std::string MonotonicityReport::to_string() const {
  std::ostringstream os;
  os << "M(V) = " << before.get_str() << ", M(V tensor lambda) = " << after.get_str()
     << " -> " << (passed() ? "pass" : "FAIL");
  return os.str();
}

MonotonicityReport monotonicity_check(const Support& v, const Partition& l,
                                      KroneckerOracle& oracle) {
  if (v.n != l.size()) throw std::invalid_argument("monotonicity_check: size mismatch");
  MonotonicityReport report;
  report.before = plancherel_measure(v);
  report.after = plancherel_measure(oracle.product_support({v, l}));
  return report;
}

std::vector<SaxlMeasurePoint> saxl_measure_trend(int r_max, KroneckerOracle& oracle) {
  if (r_max < 2) throw std::invalid_argument("saxl_measure_trend: r_max must be >= 2");
  std::vector<SaxlMeasurePoint> points;
  for (int r = 2; r <= r_max; ++r) {
    SaxlMeasurePoint pt;
    pt.r = r;
    pt.n = r * (r + 1) / 2;
    if (pt.n > oracle.config().coefficient_cap)
      throw resource_limit_error("saxl_measure_trend: triangular size exceeds oracle cap");
    Partition rho = staircase(r);
    pt.measure = plancherel_measure(oracle.tensor_support(rho, rho));
    points.push_back(std::move(pt));
  }
  return points;
}

bool AffineDemoReport::demonstrates_failure() const {
  return uniform_measure_sum > 1 && !product_covers && plancherel_measure_sum <= 1;
}

std::string AffineDemoReport::to_string() const {
  std::ostringstream os;
  os << "affine group over F_" << p << ": " << (p - 1) << " one-dim irreps, one of dim "
     << (p - 1) << '\n';
  os << "uniform measure of V = W = {one-dim irreps}: " << uniform_measure_each.get_str()
     << " each, sum " << uniform_measure_sum.get_str() << " > 1\n";
  os << "product support contains the (p-1)-dim irrep: " << (product_covers ? "yes" : "no")
     << '\n';
  os << "Plancherel measures sum to " << plancherel_measure_sum.get_str()
     << " <= 1, so the pigeonhole lemma is not contradicted\n";
  return os.str();
}

AffineDemoReport affine_counterexample_demo(int p) {
  if (p < 3) throw std::invalid_argument("affine_counterexample_demo: p must be >= 3");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("affine_counterexample_demo: p must be prime");

  AffineDemoReport report;
  report.p = p;
  // |G| = p(p-1); irreps: p-1 of dimension 1, one of dimension p-1. The
  // one-dimensional irreps are the characters of the quotient F_p^*, closed
  // under tensor product, so V (x) W never reaches the large irrep.
  report.uniform_measure_each = mpq_class(p - 1, p);
  report.uniform_measure_each.canonicalize();
  report.uniform_measure_sum = mpq_class(2 * (p - 1), p);
  report.uniform_measure_sum.canonicalize();
  report.product_covers = false;
  report.plancherel_measure_each = mpq_class(p - 1, p * (p - 1));
  report.plancherel_measure_each.canonicalize();
  report.plancherel_measure_sum = 2 * report.plancherel_measure_each;
  report.plancherel_measure_sum.canonicalize();
  return report;
}

}  // namespace kron
