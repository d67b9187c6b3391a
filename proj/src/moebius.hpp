#ifndef KDIM_MOEBIUS_HPP_
#define KDIM_MOEBIUS_HPP_

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace kdim {

using Complex = std::complex<double>;

// Tolerances used throughout the Moebius layer.
struct Tolerances {
  static constexpr double normalization = 1e-12;
  static constexpr double classification = 1e-9;
  static constexpr double dedupe = 1e-8;
};

// A point on the Riemann sphere: a finite complex number or infinity.
class SpherePoint {
 public:
  SpherePoint() : finite_(true), z_(0.0, 0.0) {}
  explicit SpherePoint(Complex z) : finite_(true), z_(z) {}
  static SpherePoint infinity() {
    SpherePoint p;
    p.finite_ = false;
    return p;
  }
  bool is_infinity() const { return !finite_; }
  Complex value() const { return z_; }  // only meaningful when finite

 private:
  bool finite_;
  Complex z_;
};

// Chordal (spherical) distance, range [0, 2].
double chordal(const SpherePoint& p, const SpherePoint& q);

enum class TransformClass { Identity, Parabolic, Elliptic, Loxodromic };

// Determinant-one 2x2 complex matrix acting on the sphere and on
// hyperbolic 3-space.  Stored in canonical sign: the first entry
// (row-major order) with |entry| above tolerance has re >= 0,
// ties broken by im >= 0.
class Moebius {
 public:
  Moebius() : a_(1), b_(0), c_(0), d_(1) {}
  Moebius(Complex a, Complex b, Complex c, Complex d);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  static Moebius identity() { return Moebius(); }

  Moebius inverse() const;
  Complex trace() const { return a_ + d_; }

  // Frobenius norm squared |a|^2+|b|^2+|c|^2+|d|^2.
  double frob2() const;

  // Matrix distance up to global sign, min over +/-.
  double dist(const Moebius& other) const;

  bool is_identity(double tol = Tolerances::classification) const;

  // "a.re a.im b.re b.im c.re c.im d.re d.im"
  std::string serialize() const;
  static Moebius parse(const std::string& line);

 private:
  Complex a_, b_, c_, d_;
  void normalize();
  void canonicalize_sign();
};

Moebius compose(const Moebius& m1, const Moebius& m2);
SpherePoint apply(const Moebius& m, const SpherePoint& p);

// Hyperbolic displacement of the Poincare-extension basepoint
// (height 1 over the origin of upper half space):
// rho = arccosh(frob2 / 2), clamped against roundoff.
double displacement(const Moebius& m);

TransformClass classify(const Moebius& m,
                        double tol = Tolerances::classification);

// Fixed points on the sphere; one point iff parabolic.
// Throws std::invalid_argument on (+/-) identity input.
std::vector<SpherePoint> fixed_points(const Moebius& m);

// Convenience constructors.
Moebius moebius_translation(Complex t);            // z -> z + t
Moebius moebius_scaling(Complex k);                // z -> k z, k != 0
// Maps the exterior of the circle |z-c1|=r1 onto the interior of
// |z-c2|=r2:  z -> c2 + r1 r2 / (z - c1).
Moebius moebius_pairing(Complex c1, double r1, Complex c2, double r2);

}  // namespace kdim

#endif  // KDIM_MOEBIUS_HPP_
