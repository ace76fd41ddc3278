#include "zr/sampler.hpp"

#include <cmath>

namespace zr {

Configuration sample_invariant(const ProcessParams& params, Rng& rng) {
  if (params.lambda < 0.0 || params.lambda >= 1.0)
    throw ParamError("sample_invariant: lambda must be in [0,1)");
  Configuration config(params.lattice_len);
  if (params.lambda == 0.0) return config;  // point mass at the empty configuration
  for (int x = 1; x <= params.lattice_len; ++x)
    config.at(x) = static_cast<std::int32_t>(rng.geometric(params.lambda));
  return config;
}

double geometric_pmf(double lambda, long k) {
  if (k < 0) return 0.0;
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  return (1.0 - lambda) * std::pow(lambda, static_cast<double>(k));
}

}  // namespace zr
