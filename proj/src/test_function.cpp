#include "zr/test_function.hpp"

#include <cmath>
#include <vector>

#include "zr/quadrature.hpp"

namespace zr {

namespace {

enum class Profile { Zero, Bump, Flat, Tilted };

double qexp(double w) { return w > 0.0 ? std::exp(-1.0 / w) : 0.0; }

// C-infinity step: 0 at w<=0, 1 at w>=1.
double smooth_step(double w) {
  if (w <= 0.0) return 0.0;
  if (w >= 1.0) return 1.0;
  double a = qexp(w), b = qexp(1.0 - w);
  return a / (a + b);
}

double smooth_step_deriv(double w) {
  if (w <= 0.0 || w >= 1.0) return 0.0;
  double a = qexp(w), b = qexp(1.0 - w);
  double s = a + b;
  double t = 1.0 / (w * w) + 1.0 / ((1.0 - w) * (1.0 - w));
  return a * b * t / (s * s);
}

}  // namespace

struct TestFunction::Impl {
  Profile profile = Profile::Zero;
  double amplitude = 0.0;
  double center = 0.0, width = 0.0;        // Bump
  double plateau_end = 0.0;                // Flat
  double support_end = 0.0;
  bool neumann = true;

  // F on a uniform grid over [0, support_end]
  std::vector<double> F_grid;
  double grid_dx = 1.0;
  double mass = 0.0, l2sq = 0.0, F_l2sq = 0.0;

  double f(double x) const {
    switch (profile) {
      case Profile::Zero:
        return 0.0;
      case Profile::Bump: {
        double v = 2.0 * (x - center) / width;
        double t = 1.0 - v * v;
        if (t <= 1e-14) return 0.0;
        return amplitude * std::exp(-1.0 / t);
      }
      case Profile::Flat: {
        if (x < 0.0 || x >= support_end) return 0.0;
        if (x <= plateau_end) return amplitude;
        double w = (x - plateau_end) / (support_end - plateau_end);
        return amplitude * (1.0 - smooth_step(w));
      }
      case Profile::Tilted: {
        if (x < 0.0 || x >= support_end) return 0.0;
        double w = x / support_end;
        return amplitude * (1.0 - w) * (1.0 - smooth_step(w));
      }
    }
    return 0.0;
  }

  double df(double x) const {
    switch (profile) {
      case Profile::Zero:
        return 0.0;
      case Profile::Bump: {
        double v = 2.0 * (x - center) / width;
        double t = 1.0 - v * v;
        if (t <= 1e-14) return 0.0;
        return amplitude * std::exp(-1.0 / t) * (-2.0 * v / (t * t)) * (2.0 / width);
      }
      case Profile::Flat: {
        if (x < 0.0 || x >= support_end || x <= plateau_end) return 0.0;
        double span = support_end - plateau_end;
        double w = (x - plateau_end) / span;
        return -amplitude * smooth_step_deriv(w) / span;
      }
      case Profile::Tilted: {
        if (x < 0.0 || x >= support_end) return 0.0;
        double w = x / support_end;
        return -(amplitude / support_end) *
               ((1.0 - smooth_step(w)) + (1.0 - w) * smooth_step_deriv(w));
      }
    }
    return 0.0;
  }

  double F(double x) const {
    if (profile == Profile::Zero || F_grid.empty()) return 0.0;
    if (x >= support_end) return 0.0;
    if (x <= 0.0) return F_grid.front();
    double u = x / grid_dx;
    auto i = static_cast<long>(std::floor(u));
    long last = static_cast<long>(F_grid.size()) - 1;
    if (i >= last) return F_grid.back();
    // 4-point Lagrange cubic on the uniform grid, clamped at the ends.
    long i0 = std::max<long>(0, std::min<long>(i - 1, last - 3));
    double s = u - static_cast<double>(i0);
    const double* g = F_grid.data() + i0;
    double c0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    double c1 = s * (s - 2.0) * (s - 3.0) / 2.0;
    double c2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
    double c3 = s * (s - 1.0) * (s - 2.0) / 6.0;
    return c0 * g[0] + c1 * g[1] + c2 * g[2] + c3 * g[3];
  }

  void build_tables() {
    if (profile == Profile::Zero) return;
    const std::size_t cells = 4096;
    grid_dx = support_end / static_cast<double>(cells);
    F_grid.assign(cells + 1, 0.0);
    // Accumulate right to left: F(support_end) = 0, F(x) = F(y) - int_x^y f.
    for (std::size_t i = cells; i-- > 0;) {
      double x0 = grid_dx * static_cast<double>(i);
      double cell = integrate_gl([this](double u) { return f(u); }, x0, x0 + grid_dx, 1);
      F_grid[i] = F_grid[i + 1] - cell;
    }
    mass = -F_grid.front();
    l2sq = integrate_gl([this](double u) { double v = f(u); return v * v; }, 0.0,
                        support_end, 2048);
    F_l2sq = integrate_gl([this](double u) { double v = F(u); return v * v; }, 0.0,
                          support_end, 2048);
  }
};

TestFunction::TestFunction() : impl_(std::make_shared<Impl>()) {}
TestFunction::TestFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

double TestFunction::f(double x) const { return impl_->f(x); }
double TestFunction::df(double x) const { return impl_->df(x); }
double TestFunction::F(double x) const { return impl_->F(x); }
double TestFunction::support_max() const { return impl_->support_end; }
bool TestFunction::neumann_ok() const { return impl_->neumann; }
double TestFunction::mass() const { return impl_->mass; }
double TestFunction::l2sq() const { return impl_->l2sq; }
double TestFunction::F_l2sq() const { return impl_->F_l2sq; }

std::string TestFunction::describe() const {
  const Impl& im = *impl_;
  switch (im.profile) {
    case Profile::Zero:
      return "zero";
    case Profile::Bump:
      return "bump center=" + std::to_string(im.center) +
             " width=" + std::to_string(im.width) +
             " amplitude=" + std::to_string(im.amplitude);
    case Profile::Flat:
      return "flat plateau=" + std::to_string(im.plateau_end) +
             " support=" + std::to_string(im.support_end) +
             " amplitude=" + std::to_string(im.amplitude);
    case Profile::Tilted:
      return "tilted support=" + std::to_string(im.support_end) +
             " amplitude=" + std::to_string(im.amplitude);
  }
  return "?";
}

TestFunction TestFunction::bump(double center, double width, double amplitude) {
  if (width <= 0.0) throw ParamError("bump: width must be positive");
  if (center - width / 2.0 < 0.0)
    throw ParamError("bump: support must stay inside [0, inf)");
  auto im = std::make_shared<Impl>();
  im->profile = Profile::Bump;
  im->amplitude = amplitude;
  im->center = center;
  im->width = width;
  im->support_end = center + width / 2.0;
  im->neumann = true;  // all derivatives vanish at the support edge
  im->build_tables();
  return TestFunction(std::move(im));
}

TestFunction TestFunction::boundary_flat(double plateau_end, double support_end,
                                         double amplitude) {
  if (!(0.0 < plateau_end && plateau_end < support_end))
    throw ParamError("boundary_flat: need 0 < plateau_end < support_end");
  auto im = std::make_shared<Impl>();
  im->profile = Profile::Flat;
  im->amplitude = amplitude;
  im->plateau_end = plateau_end;
  im->support_end = support_end;
  im->neumann = true;
  im->build_tables();
  return TestFunction(std::move(im));
}

TestFunction TestFunction::boundary_tilted(double support_end, double amplitude) {
  if (support_end <= 0.0) throw ParamError("boundary_tilted: support must be positive");
  auto im = std::make_shared<Impl>();
  im->profile = Profile::Tilted;
  im->amplitude = amplitude;
  im->support_end = support_end;
  im->neumann = false;
  im->build_tables();
  return TestFunction(std::move(im));
}

TestFunction TestFunction::zero() { return TestFunction(); }

TestFunction make_bump(double center, double width, double amplitude) {
  return TestFunction::bump(center, width, amplitude);
}

namespace {

// Fixed mollifier profile phi(u) = C exp(-1/(u(1-u))) on (0,1), with its
// cumulative Phi tabulated once; the table is normalized so Phi(1) = 1
// exactly at grid level.
struct MollifierTables {
  std::vector<double> Phi;
  double dx;
  double norm;

  MollifierTables() {
    const std::size_t cells = 4096;
    dx = 1.0 / static_cast<double>(cells);
    Phi.assign(cells + 1, 0.0);
    auto raw = [](double u) {
      double t = u * (1.0 - u);
      return t > 1e-14 ? std::exp(-1.0 / t) : 0.0;
    };
    for (std::size_t i = 0; i < cells; ++i) {
      double x0 = dx * static_cast<double>(i);
      Phi[i + 1] = Phi[i] + integrate_gl(raw, x0, x0 + dx, 1);
    }
    norm = 1.0 / Phi.back();
    for (double& v : Phi) v *= norm;
  }

  double phi(double u) const {
    double t = u * (1.0 - u);
    return t > 1e-14 ? norm * std::exp(-1.0 / t) : 0.0;
  }

  double cumulative(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double s = u / dx;
    auto i = static_cast<long>(std::floor(s));
    long last = static_cast<long>(Phi.size()) - 1;
    long i0 = std::max<long>(0, std::min<long>(i - 1, last - 3));
    double r = s - static_cast<double>(i0);
    const double* g = Phi.data() + i0;
    double c0 = -(r - 1.0) * (r - 2.0) * (r - 3.0) / 6.0;
    double c1 = r * (r - 2.0) * (r - 3.0) / 2.0;
    double c2 = -r * (r - 1.0) * (r - 3.0) / 2.0;
    double c3 = r * (r - 1.0) * (r - 2.0) / 6.0;
    return c0 * g[0] + c1 * g[1] + c2 * g[2] + c3 * g[3];
  }
};

const MollifierTables& mollifier_tables() {
  static const MollifierTables tables;
  return tables;
}

}  // namespace

Mollifier::Mollifier(double epsilon) : eps_(epsilon) {
  if (epsilon <= 0.0) throw ParamError("mollifier: epsilon must be positive");
  mollifier_tables();  // force table construction
}

double Mollifier::phi(double x) const { return mollifier_tables().phi(x / eps_) / eps_; }

double Mollifier::h(double x) const {
  if (x <= 0.0) return 1.0;
  if (x >= eps_) return 0.0;
  return 1.0 - mollifier_tables().cumulative(x / eps_);
}

Mollifier make_mollifier(double epsilon) { return Mollifier(epsilon); }

}  // namespace zr
