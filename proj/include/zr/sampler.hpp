#ifndef ZR_SAMPLER_HPP
#define ZR_SAMPLER_HPP

#include "zr/process.hpp"
#include "zr/rng.hpp"

namespace zr {

// Draws from the invariant product measure: i.i.d. geometric marginals on
// {0,1,2,...} with success probability 1 - lambda, mean rho.
Configuration sample_invariant(const ProcessParams& params, Rng& rng);

// Exact pmf of the single-site marginal, P(eta(x) = k).
double geometric_pmf(double lambda, long k);

}  // namespace zr

#endif
