#include "schwarzian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kdim {

namespace {

constexpr int kCirclePoints = 16;

// Derivative of an analytic map by trapezoidal sampling on a small
// circle (the Richardson-extrapolated limit of central differences:
// equally weighted antipodal pairs cancel all even-order error terms).
Complex circle_derivative(const std::function<Complex(Complex)>& f, Complex z,
                          double r) {
  Complex c1 = 0.0;
  for (int j = 0; j < kCirclePoints; ++j) {
    double th = 2.0 * M_PI * j / kCirclePoints;
    Complex w = std::polar(r, th);
    c1 += f(z + w) * std::polar(1.0, -th);
  }
  return c1 / (static_cast<double>(kCirclePoints) * r);
}

// First and second derivatives of phi = log f' around z, using
// principal logs of ratios so no branch is crossed for small radii.
void log_fprime_derivatives(const std::function<Complex(Complex)>& fprime,
                            Complex z, double r, Complex& phi1,
                            Complex& phi2) {
  Complex f0 = fprime(z);
  Complex c1 = 0.0, c2 = 0.0;
  for (int j = 0; j < kCirclePoints; ++j) {
    double th = 2.0 * M_PI * j / kCirclePoints;
    Complex w = std::polar(r, th);
    Complex g = std::log(fprime(z + w) / f0);
    c1 += g * std::polar(1.0, -th);
    c2 += g * std::polar(1.0, -2.0 * th);
  }
  c1 /= static_cast<double>(kCirclePoints);
  c2 /= static_cast<double>(kCirclePoints);
  phi1 = c1 / r;
  phi2 = 2.0 * c2 / (r * r);
}

std::vector<Complex> poly_derivative(const std::vector<Complex>& c) {
  std::vector<Complex> d;
  for (std::size_t k = 1; k < c.size(); ++k)
    d.push_back(static_cast<double>(k) * c[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

Complex poly_eval(const std::vector<Complex>& c, Complex z) {
  Complex v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * z + c[k];
  return v;
}

}  // namespace

AnalyticMap AnalyticMap::numeric(std::function<Complex(Complex)> f,
                                 Complex center, double radius, double step) {
  AnalyticMap m;
  m.eval = std::move(f);
  m.domain_center = center;
  m.domain_radius = radius;
  m.step = step;
  return m;
}

AnalyticMap AnalyticMap::polynomial(std::vector<Complex> coeffs,
                                    Complex center, double radius) {
  if (coeffs.empty())
    throw std::invalid_argument("AnalyticMap::polynomial: no coefficients");
  AnalyticMap m;
  m.coeffs = coeffs;
  m.eval = [coeffs = std::move(coeffs)](Complex z) {
    return poly_eval(coeffs, z);
  };
  m.domain_center = center;
  m.domain_radius = radius;
  return m;
}

AnalyticMap AnalyticMap::moebius(const Moebius& mb, Complex center,
                                 double radius) {
  return numeric(
      [mb](Complex z) {
        auto w = apply(mb, SpherePoint(z));
        if (w.is_infinity())
          throw std::domain_error("moebius map: pole inside sample radius");
        return w.value();
      },
      center, radius);
}

SchwarzianSample schwarzian_at(const AnalyticMap& f, Complex z) {
  // Sampling radius: keep a margin of 4 steps to the domain boundary.
  double margin = f.domain_radius - std::abs(z - f.domain_center);
  // The sampling error is roundoff-dominated and scales like r^-3, so
  // prefer a generous radius; truncation only matters near the boundary.
  double r = std::max(f.step, 0.1) * f.domain_radius;
  if (margin < 4.0 * r)
    throw std::invalid_argument("schwarzian_at: too close to domain boundary");

  SchwarzianSample s;
  s.z = z;
  if (f.exact()) {
    auto d1 = poly_derivative(f.coeffs);
    auto d2 = poly_derivative(d1);
    auto d3 = poly_derivative(d2);
    Complex f1 = poly_eval(d1, z);
    if (std::abs(f1) < 1e-10)
      throw std::invalid_argument("schwarzian_at: |f'| < 1e-10 (not univalent here)");
    Complex f2 = poly_eval(d2, z);
    Complex f3 = poly_eval(d3, z);
    Complex q = f2 / f1;
    s.value = f3 / f1 - 1.5 * q * q;
  } else {
    auto fprime = [&](Complex w) {
      return circle_derivative(f.eval, w, r / 2.0);
    };
    Complex f1 = fprime(z);
    if (std::abs(f1) < 1e-10)
      throw std::invalid_argument("schwarzian_at: |f'| < 1e-10 (not univalent here)");
    Complex phi1, phi2;
    log_fprime_derivatives(fprime, z, r, phi1, phi2);
    s.value = phi2 - 0.5 * phi1 * phi1;
  }
  double az = std::abs(z);
  if (az < 1.0) {
    double w = 1.0 - az * az;
    s.invariant_s = std::abs(s.value) * w * w;
  }
  return s;
}

double composition_residual(const AnalyticMap& f, const AnalyticMap& g,
                            Complex z) {
  AnalyticMap fg;
  if (f.exact() && g.exact()) {
    // Exact polynomial composition via Horner on coefficient arrays.
    std::vector<Complex> comp = {f.coeffs.back()};
    for (std::size_t k = f.coeffs.size() - 1; k-- > 0;) {
      // comp = comp * g + f.coeffs[k]
      std::vector<Complex> prod(comp.size() + g.coeffs.size() - 1, 0.0);
      for (std::size_t i = 0; i < comp.size(); ++i)
        for (std::size_t j = 0; j < g.coeffs.size(); ++j)
          prod[i + j] += comp[i] * g.coeffs[j];
      prod[0] += f.coeffs[k];
      comp = std::move(prod);
    }
    fg = AnalyticMap::polynomial(std::move(comp), g.domain_center,
                                 g.domain_radius);
  } else {
    fg = AnalyticMap::numeric([&](Complex w) { return f.eval(g.eval(w)); },
                              g.domain_center, g.domain_radius, g.step);
  }
  Complex s_fg = schwarzian_at(fg, z).value;
  Complex gz = g.eval(z);
  Complex s_f = schwarzian_at(f, gz).value;
  Complex s_g = schwarzian_at(g, z).value;
  Complex g1;
  if (g.exact()) {
    g1 = poly_eval(poly_derivative(g.coeffs), z);
  } else {
    double r = std::max(g.step, 0.02) * g.domain_radius / 2.0;
    g1 = circle_derivative(g.eval, z, r);
  }
  return std::abs(s_fg - s_f * g1 * g1 - s_g);
}

InvariantFieldReport invariant_field(const AnalyticMap& f,
                                     const std::vector<Complex>& samples,
                                     double threshold) {
  if (samples.empty())
    throw std::invalid_argument("invariant_field: no samples");
  InvariantFieldReport rep;
  rep.s_min = std::numeric_limits<double>::infinity();
  std::size_t above = 0;
  for (Complex z : samples) {
    if (std::abs(z) >= 1.0)
      throw std::invalid_argument("invariant_field: sample outside unit disk");
    auto s = schwarzian_at(f, z);
    rep.s_min = std::min(rep.s_min, s.invariant_s);
    rep.s_max = std::max(rep.s_max, s.invariant_s);
    if (s.invariant_s >= threshold) ++above;
    rep.samples.push_back(s);
  }
  rep.fraction_above =
      static_cast<double>(above) / static_cast<double>(samples.size());
  return rep;
}

}  // namespace kdim
