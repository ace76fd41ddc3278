#ifndef ZR_EXACT_LAB_HPP
#define ZR_EXACT_LAB_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zr/engine.hpp"

namespace zr {

// Closed box Omega_{k,l}: all occupancy vectors on {1..l} with total k,
// enumerated in colexicographic order with a perfect stars-and-bars rank.
// The generator L_l encodes nearest-neighbor jumps at rate 1{eta(x)>0}
// per directed edge; it is symmetric, so the uniform measure is reversible.
struct SmallSystem {
  int k = 0;
  int l = 0;
  std::vector<std::vector<std::int32_t>> states;
  Eigen::MatrixXd generator;

  std::size_t size() const { return states.size(); }
  double uniform_weight() const { return 1.0 / static_cast<double>(states.size()); }
  std::size_t index_of(std::span<const std::int32_t> state) const;
};

inline constexpr std::size_t kDefaultStateCap = 200000;

std::uint64_t count_states(int k, int l);  // C(k+l-1, l-1)

SmallSystem build_small_system(int k, int l, std::size_t state_cap = kDefaultStateCap);

// Smallest nonzero eigenvalue of -L_l; nullopt for a one-point state space.
std::optional<double> spectral_gap(const SmallSystem& sys);

struct GapRow {
  int k, l;
  std::size_t states;
  double gap;
  double gap_times_klsq;  // gap * (k + l)^2
};
struct GapTable {
  std::vector<GapRow> rows;
  double kappa0 = 0.0;  // max over rows of 1 / (gap (k+l)^2)
  bool all_positive = true;
};
GapTable verify_gap_bound(int kmax, int lmax, std::size_t state_cap = kDefaultStateCap);

// E[g(eta(1)) | sum eta = k] two ways: the closed formula
// 1 - 1/(1 + (l/(l-1)) k/l) and direct enumeration under the uniform measure.
struct PsiValues {
  double formula;
  double enumeration;
};
PsiValues psi_conditional(int k, int l, std::size_t state_cap = kDefaultStateCap);

// ||f||_{-1}^2 via the Poisson equation (-L) u = f on the mean-zero
// subspace; throws on non-mean-zero input or a singular (disconnected)
// system.
double h_minus_one_norm(const SmallSystem& sys, const Eigen::VectorXd& f);
// Independent route: direct numerical maximization of
// sup_h { 2<f,h> - <h,-Lh> } by conjugate gradient ascent.
double h_minus_one_variational(const SmallSystem& sys, const Eigen::VectorXd& f,
                               int max_iters = 0, double tol = 1e-12);

// Large deviations rate of geometric distributions with mean rho:
// I_rho(a) = a log(a(1+rho)/(rho(1+a))) - log((1+a)/(1+rho)); I_rho(0)
// uses the convention 0 log 0 = 0, giving log(1+rho).
double ldp_rate(double rho, double a);
// Numerical Legendre transform of log M_rho (golden-section) -- the
// independent oracle for ldp_rate.
double ldp_rate_legendre(double rho, double a);
// Exponential-distribution limit b/a - log(b/a) - 1 of I_{rho_n}(a_n).
double ldp_limit(double b, double a);

struct LdpLimitCheck {
  double limit;
  double rate_at_n;
  double abs_err;
  bool lower_tail_regime;  // a > b, the regime the paper uses
};
LdpLimitCheck ldp_limit_check(int n, double b, double a);

// Exact lower-tail probability P(eta^{n,l} <= a_n) by pmf convolution,
// compared against the Cramer bound exp(-l I_{rho_n}(a_n)).
struct TailReport {
  int n, l;
  double b, a;
  double a_n;
  double probability;
  double log_prob_per_l;  // (1/l) log P
  double rate_bound;      // -I_{rho_n}(a_n)
  double slack;           // rate_bound - log_prob_per_l >= 0 when the bound holds
  bool holds;
  bool vacuous;  // a_n >= rho_n
};
TailReport tail_bound_check(int n, double b, int l, double a);

// Exact central moments of the mean of l i.i.d. Geom(b/n) variables.
struct MomentReport {
  double variance;        // kappa2 / l
  double fourth_central;  // kappa4/l^3 + 3 kappa2^2/l^2
  double ratio;           // l^3 E(X-rho)^4 / n^4
};
MomentReport moment_oracle(int n, double b, int l);

// Monte Carlo check of the Kipnis-Varadhan inequality for bond-difference
// additive functionals: E sup_{t<=T} (int_0^t V ds)^2 <= 18 T / n^4 sum h^2.
struct KvReport {
  double lhs_mean;
  double lhs_se;
  double rhs;
  int replicas;
  bool pass;  // lhs_mean + 2 se <= rhs
};
KvReport kv_inequality_check(const ProcessParams& params, const BondObservable& h,
                             double T, int replicas, std::uint64_t seed,
                             int threads = 0);

}  // namespace zr

#endif
