#ifndef ZR_TEST_FUNCTION_HPP
#define ZR_TEST_FUNCTION_HPP

#include <memory>
#include <string>

#include "zr/common.hpp"

namespace zr {

// Smooth compactly supported test function on [0, infinity) together with
// its antiderivative F(x) = -int_x^inf f(y) dy. f and f' are analytic;
// F is accumulated by Gauss-Legendre quadrature on a dense grid and read
// back through cubic interpolation.
class TestFunction {
 public:
  TestFunction();  // the zero function

  double f(double x) const;
  double df(double x) const;
  double F(double x) const;

  double support_max() const;
  bool neumann_ok() const;  // true iff f'(0) = 0

  double mass() const;    // int f
  double l2sq() const;    // int f^2
  double F_l2sq() const;  // int F^2

  // Profile name + parameters, as recorded in experiment manifests.
  std::string describe() const;

  // C-infinity bump exp(-1/(1-v^2)) scaled to [center-width/2, center+width/2].
  // Interior bumps need center - width/2 >= 0.
  static TestFunction bump(double center, double width, double amplitude = 1.0);
  // Flat profile near the origin: f = amplitude on [0, plateau_end], smooth
  // decay to 0 at support_end. Has f'(0) = 0 exactly.
  static TestFunction boundary_flat(double plateau_end, double support_end,
                                    double amplitude = 1.0);
  // Boundary-supported profile with f'(0) = -amplitude/support_end != 0;
  // outside the hypotheses of the limit theorems, used as a discriminator.
  static TestFunction boundary_tilted(double support_end, double amplitude = 1.0);
  static TestFunction zero();

 private:
  struct Impl;
  explicit TestFunction(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

TestFunction make_bump(double center, double width, double amplitude = 1.0);

// Mollifier family built from the fixed bump phi supported in (0,1) with
// unit mass: phi_eps(x) = phi(x/eps)/eps and h_eps(x) = int_x^inf phi_eps.
class Mollifier {
 public:
  explicit Mollifier(double epsilon);

  double epsilon() const { return eps_; }
  double phi(double x) const;  // phi_eps(x) >= 0, unit mass
  double h(double x) const;    // h(0) = 1, h(x) = 0 for x >= eps

 private:
  double eps_;
};

Mollifier make_mollifier(double epsilon);

}  // namespace zr

#endif
