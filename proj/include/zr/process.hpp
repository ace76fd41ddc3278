#ifndef ZR_PROCESS_HPP
#define ZR_PROCESS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "zr/common.hpp"

namespace zr {

// Symmetric finite-range jump distribution p(.), normalized over z != 0.
// The engine gives each occupied site one rate-2 clock and draws the offset
// from p, so the nearest-neighbor dynamics is the special case
// p(+-1) = 1/2. Creations happen at site x with rate 2*lambda*p(x), x > 0.
struct JumpKernel {
  int range = 1;
  std::vector<double> prob;  // prob[z + range] for z in [-range, range], prob[range] = 0

  static JumpKernel nearest_neighbor();
  // pairs of (offset, probability); must come out symmetric and normalized.
  static JumpKernel from_offsets(const std::vector<std::pair<int, double>>& entries);

  double p(int z) const {
    return (z >= -range && z <= range) ? prob[static_cast<std::size_t>(z + range)] : 0.0;
  }
  bool is_nearest_neighbor() const;
  // sum_z z^2 p(z) over all z != 0; multiplies b^2 in the limiting equation.
  double sigma_sq() const;
  // one-sided second moment sum_{z>0} z^2 p(z) = sigma_sq()/2.
  double one_sided_second_moment() const;
  void validate() const;

  // Inverse-CDF draws reusing a uniform fraction in [0,1). Offsets are
  // ordered -R..-1, +1..+R so the nearest-neighbor case maps frac < 1/2
  // to a left jump.
  int sample_offset(double frac) const;
  // Creation site in 1..R with probabilities 2 p(x).
  int sample_creation_site(double frac) const;
};

struct ProcessParams {
  int n = 0;             // scaling parameter
  double b = 0.0;        // drift of the limiting equation
  double lambda = 0.0;   // source activation, 1 - b/n in standard mode
  double rho = 0.0;      // mean occupancy lambda/(1-lambda) = n/b - 1
  int lattice_len = 0;   // truncation window {1..L}
  double horizon = 0.0;  // macroscopic time horizon
  JumpKernel kernel = JumpKernel::nearest_neighbor();

  // Standard scaling lambda_n = 1 - b/n. L <= 0 selects the default window.
  static ProcessParams standard(int n, double b, int lattice_len = 0, double horizon = 0.0);
  // General mode: any lambda in [0,1) with the effective drift n(1-lambda)
  // declared by the caller.
  static ProcessParams with_lambda(int n, double lambda, int lattice_len = 0,
                                   double horizon = 0.0);

  static int default_window(int n, double b, double horizon);

  double micro_horizon() const;  // horizon * n^4
  double time_scale() const;     // n^4
  void validate() const;
};

ProcessParams set_kernel(ProcessParams params, const JumpKernel& kernel);

// Occupancy counts on the window {1..L}.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(int lattice_len) : eta_(static_cast<std::size_t>(lattice_len), 0) {}

  int size() const { return static_cast<int>(eta_.size()); }
  std::int32_t at(int site) const { return eta_[static_cast<std::size_t>(site - 1)]; }
  std::int32_t& at(int site) { return eta_[static_cast<std::size_t>(site - 1)]; }
  const std::vector<std::int32_t>& data() const { return eta_; }
  std::vector<std::int32_t>& data() { return eta_; }

  std::int64_t total_particles() const;
  bool operator==(const Configuration&) const = default;

 private:
  std::vector<std::int32_t> eta_;
};

// Signed net currents across every cut c in {0..L}: J(c) counts crossings
// of the cut between {..,c} and {c+1,..}, rightward positive. J(0) is the
// source bond (creations minus annihilations at the origin side).
class CurrentLedger {
 public:
  CurrentLedger() = default;
  explicit CurrentLedger(int lattice_len)
      : j_(static_cast<std::size_t>(lattice_len) + 1, 0) {}

  int num_cuts() const { return static_cast<int>(j_.size()); }  // L + 1
  std::int64_t at(int cut) const { return j_[static_cast<std::size_t>(cut)]; }
  std::int64_t& at(int cut) { return j_[static_cast<std::size_t>(cut)]; }
  const std::vector<std::int64_t>& data() const { return j_; }

  std::uint64_t hash() const;  // FNV-1a over entries
  bool operator==(const CurrentLedger&) const = default;

 private:
  std::vector<std::int64_t> j_;
};

struct JumpEvent {
  enum class Kind : std::uint8_t {
    Jump,          // particle at `site` moves by `offset`
    SourceCreate,  // particle created at `site` by the origin source
    MirrorCreate,  // particle created at `site` by the right reservoir
  };

  Kind kind = Kind::Jump;
  std::int32_t site = 0;
  std::int32_t offset = 0;     // ignored for creations
  double micro_time = 0.0;     // exponential waiting time, microscopic units

  static JumpEvent jump(int site, int offset, double dt = 1.0) {
    return {Kind::Jump, site, offset, dt};
  }
  static JumpEvent jump_left(int site, double dt = 1.0) { return jump(site, -1, dt); }
  static JumpEvent jump_right(int site, double dt = 1.0) { return jump(site, +1, dt); }
  static JumpEvent source_create(int site = 1, double dt = 1.0) {
    return {Kind::SourceCreate, site, 0, dt};
  }
  static JumpEvent mirror_create(int site, double dt = 1.0) {
    return {Kind::MirrorCreate, site, 0, dt};
  }
};

// What an event did: occupancy deltas plus the inclusive cut interval it
// crossed. Enough for incremental observers to stay exact.
struct EventEffects {
  int site_down = 0;  // occupancy decremented here (0 = none)
  int site_up = 0;    // occupancy incremented here (0 = none)
  int cut_lo = 0, cut_hi = -1;  // empty when cut_lo > cut_hi
  int cut_sign = 0;
};

// Executes one elementary transition, updating exactly the crossed cut
// currents. Throws ParamError on jumps from empty sites, ShapeError on
// mismatched windows, ParamError on out-of-range sites. Inline: this is
// the hot path of the event loop.
inline EventEffects apply_event(Configuration& config, CurrentLedger& ledger,
                                const JumpEvent& ev, const ProcessParams& params) {
  const int L = params.lattice_len;
  if (config.size() != L || ledger.num_cuts() != L + 1)
    throw ShapeError("apply_event: configuration/ledger do not match the window");

  EventEffects fx;
  auto cross = [&](int lo, int hi, int sign) {
    fx.cut_lo = lo;
    fx.cut_hi = hi;
    fx.cut_sign = sign;
    for (int c = lo; c <= hi; ++c) ledger.at(c) += sign;
  };

  switch (ev.kind) {
    case JumpEvent::Kind::SourceCreate: {
      const int s = ev.site;
      if (s < 1 || s > params.kernel.range)
        throw ParamError("apply_event: source creation site out of kernel range");
      config.at(s) += 1;
      fx.site_up = s;
      cross(0, s - 1, +1);
      return fx;
    }
    case JumpEvent::Kind::MirrorCreate: {
      const int s = ev.site;
      if (s < L + 1 - params.kernel.range || s > L)
        throw ParamError("apply_event: mirror creation site out of kernel range");
      config.at(s) += 1;
      fx.site_up = s;
      cross(s, L, -1);
      return fx;
    }
    case JumpEvent::Kind::Jump: {
      const int x = ev.site;
      if (x < 1 || x > L) throw ParamError("apply_event: jump site out of range");
      const int z = ev.offset;
      if (z == 0 || (z > params.kernel.range) || (-z > params.kernel.range))
        throw ParamError("apply_event: jump offset outside kernel range");
      if (config.at(x) < 1)
        throw ParamError("apply_event: jump from empty site");
      const int y = x + z;
      config.at(x) -= 1;
      fx.site_down = x;
      if (y >= 1 && y <= L) {
        config.at(y) += 1;
        fx.site_up = y;
      }
      if (y > x) {
        cross(x, y - 1 < L ? y - 1 : L, +1);
      } else {
        cross(y > 0 ? y : 0, x - 1, -1);
      }
      return fx;
    }
  }
  throw ParamError("apply_event: unknown event kind");
}

// Continuity relation J(x-1) - J(x) = eta_t(x) - eta_0(x) at every site.
// Holds exactly (integer arithmetic) for both nearest-neighbor and kernel
// modes because the ledger tracks cut crossings.
bool check_continuity(const Configuration& config0, const Configuration& configT,
                      const CurrentLedger& ledger);

using EventLog = std::vector<JumpEvent>;

// Replays a recorded event log from config0; reproduces the final state
// and ledger bit-exactly.
void replay(Configuration& config, CurrentLedger& ledger, const EventLog& log,
            const ProcessParams& params);

}  // namespace zr

#endif
