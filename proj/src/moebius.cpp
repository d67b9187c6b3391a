#include "moebius.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kdim {

double chordal(const SpherePoint& p, const SpherePoint& q) {
  if (p.is_infinity() && q.is_infinity()) return 0.0;
  if (p.is_infinity() || q.is_infinity()) {
    Complex z = p.is_infinity() ? q.value() : p.value();
    return 2.0 / std::sqrt(1.0 + std::norm(z));
  }
  Complex z = p.value(), w = q.value();
  return 2.0 * std::abs(z - w) /
         std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

Moebius::Moebius(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d) {
  normalize();
  canonicalize_sign();
}

void Moebius::normalize() {
  Complex det = a_ * d_ - b_ * c_;
  if (std::abs(det) < 1e-14)
    throw std::invalid_argument("Moebius: singular matrix");
  // Idempotent: already-normalized matrices pass through bit-exactly,
  // so serialize/parse round trips are lossless.
  if (std::abs(det - Complex(1.0)) <= Tolerances::normalization) return;
  Complex s = std::sqrt(det);
  a_ /= s;
  b_ /= s;
  c_ /= s;
  d_ /= s;
}

void Moebius::canonicalize_sign() {
  const Complex* entries[4] = {&a_, &b_, &c_, &d_};
  for (const Complex* e : entries) {
    if (std::abs(*e) <= Tolerances::normalization) continue;
    bool flip;
    if (std::abs(e->real()) > Tolerances::normalization)
      flip = e->real() < 0;
    else
      flip = e->imag() < 0;
    if (flip) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
      d_ = -d_;
    }
    return;
  }
}

Moebius Moebius::inverse() const { return Moebius(d_, -b_, -c_, a_); }

double Moebius::frob2() const {
  return std::norm(a_) + std::norm(b_) + std::norm(c_) + std::norm(d_);
}

double Moebius::dist(const Moebius& other) const {
  auto d4 = [&](double s) {
    return std::abs(a_ - s * other.a_) + std::abs(b_ - s * other.b_) +
           std::abs(c_ - s * other.c_) + std::abs(d_ - s * other.d_);
  };
  return std::min(d4(1.0), d4(-1.0));
}

bool Moebius::is_identity(double tol) const {
  return dist(Moebius::identity()) <= tol;
}

std::string Moebius::serialize() const {
  std::ostringstream os;
  os.precision(17);
  os << a_.real() << ' ' << a_.imag() << ' ' << b_.real() << ' ' << b_.imag()
     << ' ' << c_.real() << ' ' << c_.imag() << ' ' << d_.real() << ' '
     << d_.imag();
  return os.str();
}

Moebius Moebius::parse(const std::string& line) {
  std::istringstream is(line);
  double v[8];
  for (double& x : v)
    if (!(is >> x)) throw std::invalid_argument("Moebius: bad transform line");
  return Moebius({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]});
}

Moebius compose(const Moebius& m1, const Moebius& m2) {
  return Moebius(m1.a() * m2.a() + m1.b() * m2.c(),
                 m1.a() * m2.b() + m1.b() * m2.d(),
                 m1.c() * m2.a() + m1.d() * m2.c(),
                 m1.c() * m2.b() + m1.d() * m2.d());
}

SpherePoint apply(const Moebius& m, const SpherePoint& p) {
  if (p.is_infinity()) {
    if (std::abs(m.c()) < 1e-300) return SpherePoint::infinity();
    return SpherePoint(m.a() / m.c());
  }
  Complex z = p.value();
  Complex num = m.a() * z + m.b();
  Complex den = m.c() * z + m.d();
  if (std::abs(den) < 1e-300) return SpherePoint::infinity();
  // Guard against overflow near the pole.
  if (std::abs(den) < 1e-150 && std::abs(num) > 1e150)
    return SpherePoint::infinity();
  return SpherePoint(num / den);
}

double displacement(const Moebius& m) {
  double arg = m.frob2() / 2.0;
  if (arg < 1.0) arg = 1.0;  // roundoff clamp
  return std::acosh(arg);
}

TransformClass classify(const Moebius& m, double tol) {
  if (m.is_identity(tol)) return TransformClass::Identity;
  Complex tr2 = m.trace() * m.trace();
  if (std::abs(tr2 - 4.0) <= tol) return TransformClass::Parabolic;
  if (std::abs(tr2.imag()) <= tol && tr2.real() >= 0.0 && tr2.real() < 4.0)
    return TransformClass::Elliptic;
  return TransformClass::Loxodromic;
}

std::vector<SpherePoint> fixed_points(const Moebius& m) {
  if (m.is_identity())
    throw std::invalid_argument("fixed_points: identity has no isolated fixed points");
  Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
  // Roots of c z^2 + (d - a) z - b = 0.
  if (std::abs(c) <= Tolerances::classification) {
    // Fixes infinity; the other fixed point solves (d-a) z = b.
    if (std::abs(d - a) <= Tolerances::classification)
      return {SpherePoint::infinity()};  // parabolic translation
    return {SpherePoint(b / (d - a)), SpherePoint::infinity()};
  }
  Complex disc = (d - a) * (d - a) + 4.0 * b * c;
  // disc = (a+d)^2 - 4 for det one; parabolic iff zero.
  if (std::abs(disc) <= Tolerances::classification * Tolerances::classification)
    return {SpherePoint((a - d) / (2.0 * c))};
  Complex s = std::sqrt(disc);
  return {SpherePoint((a - d + s) / (2.0 * c)),
          SpherePoint((a - d - s) / (2.0 * c))};
}

Moebius moebius_translation(Complex t) { return Moebius(1.0, t, 0.0, 1.0); }

Moebius moebius_scaling(Complex k) {
  return Moebius(std::sqrt(k), 0.0, 0.0, 1.0 / std::sqrt(k));
}

Moebius moebius_pairing(Complex c1, double r1, Complex c2, double r2) {
  // z -> c2 + r1 r2 / (z - c1) = (c2 z + (r1 r2 - c1 c2)) / (z - c1)
  return Moebius(c2, r1 * r2 - c1 * c2, 1.0, -c1);
}

}  // namespace kdim
