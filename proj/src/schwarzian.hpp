#ifndef KDIM_SCHWARZIAN_HPP_
#define KDIM_SCHWARZIAN_HPP_

#include <functional>
#include <vector>

#include "moebius.hpp"

namespace kdim {

// A locally univalent analytic map on a declared disk, with either a
// numeric differentiation mode or exact polynomial coefficients.
struct AnalyticMap {
  std::function<Complex(Complex)> eval;
  Complex domain_center = 0.0;
  double domain_radius = 1.0;
  // Numeric mode: Richardson-extrapolated central differences with this
  // base step (scaled by the domain radius).
  double step = 1e-4;
  // Exact mode: polynomial coefficients c0 + c1 z + ... (empty => numeric).
  std::vector<Complex> coeffs;

  bool exact() const { return !coeffs.empty(); }

  static AnalyticMap numeric(std::function<Complex(Complex)> f,
                             Complex center = 0.0, double radius = 1.0,
                             double step = 1e-4);
  static AnalyticMap polynomial(std::vector<Complex> coeffs,
                                Complex center = 0.0, double radius = 1.0);
  static AnalyticMap moebius(const Moebius& m, Complex center = 0.0,
                             double radius = 1.0);
};

struct SchwarzianSample {
  Complex z;
  Complex value;            // S(f)(z)
  double invariant_s = -1.0;  // |S| (1-|z|^2)^2 inside the unit disk, else -1
};

// S(f) = (f''/f')' - (1/2)(f''/f')^2, numerically via log f', exactly
// via coefficient differentiation.  Rejects near-critical points
// (|f'(z)| < 1e-10).
SchwarzianSample schwarzian_at(const AnalyticMap& f, Complex z);

// |S(f.g)(z) - S(f)(g(z)) g'(z)^2 - S(g)(z)|
double composition_residual(const AnalyticMap& f, const AnalyticMap& g,
                            Complex z);

struct InvariantFieldReport {
  std::vector<SchwarzianSample> samples;
  double s_min = 0.0, s_max = 0.0;
  double fraction_above = 0.0;  // fraction with s >= threshold
};

InvariantFieldReport invariant_field(const AnalyticMap& f,
                                     const std::vector<Complex>& samples,
                                     double threshold = 0.1);

}  // namespace kdim

#endif  // KDIM_SCHWARZIAN_HPP_
