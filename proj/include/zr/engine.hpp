#ifndef ZR_ENGINE_HPP
#define ZR_ENGINE_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "zr/process.hpp"
#include "zr/rng.hpp"
#include "zr/test_function.hpp"

namespace zr {

// A test-function observable registered before the run so the engine can
// maintain the exact between-event time integrals that the martingale
// decomposition and the Boltzmann-Gibbs residual need.
struct Observable {
  std::string name;
  TestFunction f;
};

// Square-summable bond weights h: the engine integrates
// sum_x h(x) (g(eta(x)) - g(eta(x+1))) exactly and tracks the running
// supremum of the integral, for Kipnis-Varadhan checks.
struct BondObservable {
  std::string name;
  int first_bond = 0;
  std::vector<double> weights;
};

struct ObsSeries {
  double field0 = 0.0;                      // X_0(f)
  std::vector<double> field;                // X_t(f)
  std::vector<double> grad_g_integral;      // int_0^t sum (g - lambda) grad_x f ds
  std::vector<double> grad_eta_integral;    // int_0^t sum (eta - rho) grad_x f ds
  std::vector<double> qv;                   // <M_t(f)>
};

struct BondSeries {
  std::vector<double> integral;  // int_0^t V ds, macroscopic time
  std::vector<double> supsq;     // sup_{s<=t} (int_0^s V)^2
};

struct Trajectory {
  ProcessParams params;
  std::vector<double> t;
  std::vector<std::int64_t> j0;
  std::vector<std::uint64_t> ledger_hash;
  std::vector<std::string> obs_names;
  std::vector<ObsSeries> obs;
  std::vector<std::string> bond_names;
  std::vector<BondSeries> bonds;
  std::uint64_t events = 0;
  bool budget_exceeded = false;
  bool continuity_ok = true;
  std::vector<Configuration> snapshots;  // at sample times, when enabled
  EventLog log;                          // when enabled

  const ObsSeries& series(const std::string& name) const;
  const BondSeries& bond_series(const std::string& name) const;
};

struct EngineOptions {
  std::uint64_t max_events = std::numeric_limits<std::uint64_t>::max();
  bool record_log = false;
  bool record_snapshots = false;
  bool check_continuity_at_samples = true;
};

// Exact continuous-time simulation at microscopic rates, reported in
// macroscopic time t = micro / n^4. Each occupied site carries a rate-2
// clock; the source and the mirror reservoir carry rate lambda each, so
// the product-geometric measure is exactly invariant on the window.
class Engine {
 public:
  Engine(const ProcessParams& params, std::vector<Observable> observables,
         std::uint64_t seed, EngineOptions options = {},
         std::vector<BondObservable> bond_observables = {});

  // Initial configuration from the invariant measure (default) or given.
  void init_invariant();
  void set_initial(const Configuration& config);

  Trajectory run(const std::vector<double>& sample_times);

  // Executes exactly one event (waiting time + transition).
  void step();

  const ProcessParams& params() const { return params_; }
  const Configuration& config() const { return config_; }
  const Configuration& initial_config() const { return config0_; }
  const CurrentLedger& ledger() const { return ledger_; }
  double micro_time() const { return tau_.value(); }
  double macro_time() const { return tau_.value() / params_.time_scale(); }
  double total_activation() const { return 2.0 * occupied_ + 2.0 * params_.lambda; }
  int occupied_count() const { return occupied_; }
  std::uint64_t events() const { return events_; }

  // Field value from the current ledger plus the frozen static term.
  double field_value(std::size_t obs_index) const;

 private:
  struct ObsState {
    std::string name;
    TestFunction f;
    int support_cut = 0;
    std::vector<double> fx, fsq, gradw;
    double static0 = 0.0;
    double S_g = 0.0, S_eta = 0.0, S_qv = 0.0;
    KahanSum A_g, A_eta, A_qv;
  };
  struct BondState {
    std::string name;
    std::vector<double> h;  // dense over cuts 0..L
    double S_v = 0.0;
    KahanSum A_v;
    double max_v = 0.0, min_v = 0.0;
  };

  void finalize_init();
  void accumulate(double dtau);
  void on_eta_change(int site, int delta);
  JumpEvent draw_event();
  void execute(const JumpEvent& ev);

  ProcessParams params_;
  EngineOptions options_;
  Rng rng_;
  Configuration config_, config0_;
  CurrentLedger ledger_;

  // Swap-with-last indexed set over occupied sites: O(1) uniform sampling,
  // insert and erase. All occupied sites share weight 2, so uniform
  // sampling plus two reservoir slots covers the whole event menu.
  std::vector<std::int32_t> occ_sites_;
  std::vector<std::int32_t> occ_pos_;  // site -> index+1, 0 when absent
  int occupied_ = 0;

  std::vector<ObsState> obs_;
  std::vector<BondState> bonds_;
  KahanSum tau_;
  std::uint64_t events_ = 0;
  bool initialized_ = false;
};

Trajectory run_replica(const ProcessParams& params,
                       const std::vector<double>& sample_times,
                       const std::vector<Observable>& observables,
                       std::uint64_t seed, EngineOptions options = {},
                       const std::vector<BondObservable>& bonds = {});

// Replicas are independent: replica r uses stream r of the master seed.
// Runs on a small thread pool; results are stored by replica index so the
// outcome is identical regardless of scheduling.
std::vector<Trajectory> run_ensemble(const ProcessParams& params,
                                     const std::vector<double>& sample_times,
                                     const std::vector<Observable>& observables,
                                     int replicas, std::uint64_t master_seed,
                                     EngineOptions options = {},
                                     const std::vector<BondObservable>& bonds = {},
                                     int threads = 0);

}  // namespace zr

#endif
