#include "zr/fields.hpp"

#include <cmath>

namespace zr {

double evaluate_field(const Configuration& config0, const CurrentLedger& ledger,
                      const ProcessParams& params, const TestFunction& f) {
  const int L = params.lattice_len;
  if (config0.size() != L || ledger.num_cuts() != L + 1)
    throw ShapeError("evaluate_field: window mismatch");
  const double n = params.n;
  if (f.support_max() > static_cast<double>(L) / n)
    throw SupportError("evaluate_field: support of f escapes the window image");

  double jsum = 0.0;
  for (int c = 0; c <= L; ++c) {
    double v = f.f(static_cast<double>(c) / n);
    if (v != 0.0) jsum += static_cast<double>(ledger.at(c)) * v;
  }
  double stat = 0.0;
  for (int x = 1; x <= L; ++x) {
    double v = f.F(static_cast<double>(x) / n);
    if (v != 0.0) stat += (static_cast<double>(config0.at(x)) - params.rho) * v;
  }
  return jsum / std::pow(n, 2.5) + stat / std::pow(n, 1.5);
}

double discrete_gradient(const TestFunction& f, int n, int x) {
  if (x < 1) throw ParamError("discrete_gradient: defined for sites x >= 1");
  double nn = n;
  return nn * (f.f(static_cast<double>(x) / nn) - f.f(static_cast<double>(x - 1) / nn));
}

double discrete_laplacian(const TestFunction& f, int n, int x) {
  if (x < 1) throw ParamError("discrete_laplacian: defined for sites x >= 1");
  double nn = n;
  return nn * (discrete_gradient(f, n, x + 1) - discrete_gradient(f, n, x));
}

std::vector<double> martingale_part(const Trajectory& traj, const std::string& name) {
  const ObsSeries& ser = traj.series(name);
  const double sqn = std::sqrt(static_cast<double>(traj.params.n));
  std::vector<double> out(ser.field.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = ser.field[i] - ser.field0 - sqn * ser.grad_g_integral[i];
  return out;
}

std::vector<double> quadratic_variation(const Trajectory& traj, const std::string& name) {
  return traj.series(name).qv;
}

std::vector<double> bg_residual(const Trajectory& traj, const std::string& name) {
  const ObsSeries& ser = traj.series(name);
  const double sqn = std::sqrt(static_cast<double>(traj.params.n));
  const double c = 1.0 / ((1.0 + traj.params.rho) * (1.0 + traj.params.rho));
  std::vector<double> out(ser.field.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = sqn * (ser.grad_g_integral[i] - c * ser.grad_eta_integral[i]);
  return out;
}

double grad_g_sum(const Configuration& config, const ProcessParams& params,
                  const TestFunction& f) {
  double s = 0.0;
  for (int x = 1; x <= config.size(); ++x) {
    double g = config.at(x) > 0 ? 1.0 : 0.0;
    double w = discrete_gradient(f, params.n, x);
    if (w != 0.0) s += (g - params.lambda) * w;
  }
  return s;
}

double grad_eta_sum(const Configuration& config, const ProcessParams& params,
                    const TestFunction& f) {
  double s = 0.0;
  for (int x = 1; x <= config.size(); ++x) {
    double w = discrete_gradient(f, params.n, x);
    if (w != 0.0) s += (static_cast<double>(config.at(x)) - params.rho) * w;
  }
  return s;
}

double qv_sum(const Configuration& config, const ProcessParams& params,
              const TestFunction& f) {
  const int L = config.size();
  const double n = params.n;
  double s = 0.0;
  for (int c = 0; c <= L; ++c) {
    double v = f.f(static_cast<double>(c) / n);
    if (v == 0.0) continue;
    double gl = c == 0 ? params.lambda : (config.at(c) > 0 ? 1.0 : 0.0);
    double gr = c == L ? params.lambda : (config.at(c + 1) > 0 ? 1.0 : 0.0);
    s += (gl + gr) * v * v;
  }
  return s;
}

}  // namespace zr
