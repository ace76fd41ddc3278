#ifndef ZR_FIELDS_HPP
#define ZR_FIELDS_HPP

#include <vector>

#include "zr/engine.hpp"
#include "zr/process.hpp"
#include "zr/test_function.hpp"

namespace zr {

// Current fluctuation field paired with f:
//   X = n^{-5/2} sum_{c>=0} J(c) f(c/n) + n^{-3/2} sum_{x>=1} (eta0(x) - rho) F(x/n).
double evaluate_field(const Configuration& config0, const CurrentLedger& ledger,
                      const ProcessParams& params, const TestFunction& f);

// grad_x f = n (f(x/n) - f((x-1)/n)), defined for sites x >= 1.
double discrete_gradient(const TestFunction& f, int n, int x);
// lap_x f = n (grad_{x+1} f - grad_x f), defined for x >= 1.
double discrete_laplacian(const TestFunction& f, int n, int x);

// M_t(f) = X_t(f) - X_0(f) - n^{1/2} int_0^t sum (g - lambda) grad_x f ds,
// from the exact accumulator recorded during the run.
std::vector<double> martingale_part(const Trajectory& traj, const std::string& name);

// Quadratic variation series <M_t(f)> as recorded.
std::vector<double> quadratic_variation(const Trajectory& traj, const std::string& name);

// Boltzmann-Gibbs residual
//   n^{1/2} int_0^t sum (g - lambda - (1+rho)^{-2} (eta - rho)) grad_x f ds.
std::vector<double> bg_residual(const Trajectory& traj, const std::string& name);

// Frozen-time integrands, evaluated directly from a configuration; used to
// cross-check the engine's incremental accumulators.
double grad_g_sum(const Configuration& config, const ProcessParams& params,
                  const TestFunction& f);
double grad_eta_sum(const Configuration& config, const ProcessParams& params,
                    const TestFunction& f);
double qv_sum(const Configuration& config, const ProcessParams& params,
              const TestFunction& f);

}  // namespace zr

#endif
