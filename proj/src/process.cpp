#include "zr/process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zr {

JumpKernel JumpKernel::nearest_neighbor() {
  JumpKernel k;
  k.range = 1;
  k.prob = {0.5, 0.0, 0.5};
  return k;
}

JumpKernel JumpKernel::from_offsets(const std::vector<std::pair<int, double>>& entries) {
  int range = 0;
  for (const auto& [z, p] : entries) {
    if (z == 0 && p != 0.0) throw ParamError("kernel: p(0) must be 0");
    range = std::max(range, std::abs(z));
  }
  if (range == 0) throw ParamError("kernel: empty support");
  JumpKernel k;
  k.range = range;
  k.prob.assign(static_cast<std::size_t>(2 * range + 1), 0.0);
  for (const auto& [z, p] : entries) k.prob[static_cast<std::size_t>(z + range)] += p;
  k.validate();
  return k;
}

bool JumpKernel::is_nearest_neighbor() const {
  return range == 1 && prob[0] == 0.5 && prob[2] == 0.5;
}

double JumpKernel::sigma_sq() const {
  double s = 0.0;
  for (int z = -range; z <= range; ++z) s += static_cast<double>(z) * z * p(z);
  return s;
}

double JumpKernel::one_sided_second_moment() const {
  double s = 0.0;
  for (int z = 1; z <= range; ++z) s += static_cast<double>(z) * z * p(z);
  return s;
}

void JumpKernel::validate() const {
  if (range < 1 || prob.size() != static_cast<std::size_t>(2 * range + 1))
    throw ParamError("kernel: inconsistent range");
  double total = 0.0;
  for (int z = -range; z <= range; ++z) {
    double pz = p(z);
    if (pz < 0.0) throw ParamError("kernel: negative probability");
    if (pz != p(-z)) throw ParamError("kernel: p must be symmetric");
    total += pz;
  }
  if (p(0) != 0.0) throw ParamError("kernel: p(0) must be 0");
  if (std::abs(total - 1.0) > 1e-12) throw ParamError("kernel: p must be normalized");
  if (p(range) == 0.0 && p(-range) == 0.0) throw ParamError("kernel: range not tight");
}

int JumpKernel::sample_offset(double frac) const {
  // CDF over offsets ordered -R..-1, +1..+R.
  double acc = 0.0;
  for (int z = -range; z <= -1; ++z) {
    acc += p(z);
    if (frac < acc) return z;
  }
  for (int z = 1; z <= range; ++z) {
    acc += p(z);
    if (frac < acc) return z;
  }
  return range;  // frac ~ 1 rounding
}

int JumpKernel::sample_creation_site(double frac) const {
  double acc = 0.0;
  for (int x = 1; x <= range; ++x) {
    acc += 2.0 * p(x);
    if (frac < acc) return x;
  }
  return range;
}

ProcessParams ProcessParams::standard(int n, double b, int lattice_len, double horizon) {
  if (n <= 0) throw ParamError("params: n must be positive");
  if (b <= 0.0) throw ParamError("params: b must be positive");
  ProcessParams p;
  p.n = n;
  p.b = b;
  p.lambda = 1.0 - b / static_cast<double>(n);
  p.rho = static_cast<double>(n) / b - 1.0;
  p.horizon = horizon;
  p.lattice_len = lattice_len > 0 ? lattice_len : default_window(n, b, horizon);
  p.validate();
  return p;
}

ProcessParams ProcessParams::with_lambda(int n, double lambda, int lattice_len,
                                         double horizon) {
  if (n <= 0) throw ParamError("params: n must be positive");
  if (lambda < 0.0 || lambda >= 1.0) throw ParamError("params: lambda must be in [0,1)");
  ProcessParams p;
  p.n = n;
  p.b = static_cast<double>(n) * (1.0 - lambda);  // declared effective drift
  p.lambda = lambda;
  p.rho = lambda / (1.0 - lambda);
  p.horizon = horizon;
  p.lattice_len = lattice_len > 0 ? lattice_len : default_window(n, p.b, horizon);
  p.validate();
  return p;
}

int ProcessParams::default_window(int n, double b, double horizon) {
  // Diffusive spread at time scale n^4 covers O(n sqrt(T)) sites; keep a
  // generous margin so the mirror reservoir cannot influence J(0).
  double diffusive = std::ceil(8.0 * b * n * std::sqrt(std::max(horizon, 0.0))) * 4.0;
  return static_cast<int>(std::max(20.0 * n, diffusive));
}

double ProcessParams::micro_horizon() const { return horizon * time_scale(); }

double ProcessParams::time_scale() const {
  double nn = static_cast<double>(n);
  return nn * nn * nn * nn;
}

void ProcessParams::validate() const {
  if (n <= 0) throw ParamError("params: n must be positive");
  if (lambda < 0.0 || lambda >= 1.0)
    throw ParamError("params: lambda must be in [0,1); got lambda = " +
                     std::to_string(lambda));
  if (lattice_len <= 0) throw ParamError("params: lattice_len must be positive");
  if (horizon < 0.0) throw ParamError("params: horizon must be nonnegative");
  kernel.validate();
  if (kernel.range >= lattice_len)
    throw ParamError("params: kernel range must be smaller than the window");
}

ProcessParams set_kernel(ProcessParams params, const JumpKernel& kernel) {
  kernel.validate();
  params.kernel = kernel;
  params.validate();
  return params;
}

std::int64_t Configuration::total_particles() const {
  return std::accumulate(eta_.begin(), eta_.end(), std::int64_t{0});
}

std::uint64_t CurrentLedger::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::int64_t v : j_) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

bool check_continuity(const Configuration& config0, const Configuration& configT,
                      const CurrentLedger& ledger) {
  if (config0.size() != configT.size())
    throw ShapeError("check_continuity: configurations on different windows");
  if (ledger.num_cuts() != config0.size() + 1)
    throw ShapeError("check_continuity: ledger does not match the window");
  const int L = config0.size();
  for (int x = 1; x <= L; ++x) {
    std::int64_t lhs = ledger.at(x - 1) - ledger.at(x);
    std::int64_t rhs = static_cast<std::int64_t>(configT.at(x)) - config0.at(x);
    if (lhs != rhs) return false;
  }
  return true;
}

void replay(Configuration& config, CurrentLedger& ledger, const EventLog& log,
            const ProcessParams& params) {
  for (const JumpEvent& ev : log) apply_event(config, ledger, ev, params);
}

}  // namespace zr
