#include "zr/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "zr/sampler.hpp"

namespace zr {

const ObsSeries& Trajectory::series(const std::string& name) const {
  for (std::size_t i = 0; i < obs_names.size(); ++i)
    if (obs_names[i] == name) return obs[i];
  throw Error("trajectory: observable not registered before the run: " + name);
}

const BondSeries& Trajectory::bond_series(const std::string& name) const {
  for (std::size_t i = 0; i < bond_names.size(); ++i)
    if (bond_names[i] == name) return bonds[i];
  throw Error("trajectory: bond observable not registered before the run: " + name);
}

Engine::Engine(const ProcessParams& params, std::vector<Observable> observables,
               std::uint64_t seed, EngineOptions options,
               std::vector<BondObservable> bond_observables)
    : params_(params),
      options_(options),
      rng_(seed),
      config_(params.lattice_len),
      config0_(params.lattice_len),
      ledger_(params.lattice_len) {
  params_.validate();
  const int L = params_.lattice_len;
  const int R = params_.kernel.range;
  const double n = params_.n;

  for (auto& o : observables) {
    ObsState st;
    st.name = std::move(o.name);
    st.f = o.f;
    const double smax = st.f.support_max();
    st.support_cut = static_cast<int>(std::ceil(smax * n));
    if (st.support_cut + R >= L)
      throw SupportError("engine: support of '" + st.name +
                         "' escapes the window image [0, L/n]");
    st.fx.assign(static_cast<std::size_t>(L) + 1, 0.0);
    st.fsq.assign(static_cast<std::size_t>(L) + 1, 0.0);
    st.gradw.assign(static_cast<std::size_t>(L) + 1, 0.0);
    for (int c = 0; c <= L; ++c) {
      double v = st.f.f(static_cast<double>(c) / n);
      st.fx[static_cast<std::size_t>(c)] = v;
      st.fsq[static_cast<std::size_t>(c)] = v * v;
    }
    for (int x = 1; x <= L; ++x)
      st.gradw[static_cast<std::size_t>(x)] =
          n * (st.fx[static_cast<std::size_t>(x)] - st.fx[static_cast<std::size_t>(x - 1)]);
    obs_.push_back(std::move(st));
  }

  for (auto& bo : bond_observables) {
    BondState bs;
    bs.name = std::move(bo.name);
    bs.h.assign(static_cast<std::size_t>(L) + 1, 0.0);
    for (std::size_t i = 0; i < bo.weights.size(); ++i) {
      int cut = bo.first_bond + static_cast<int>(i);
      if (cut < 0 || cut > L)
        throw ParamError("engine: bond weight outside the cut range 0..L");
      if (!std::isfinite(bo.weights[i]))
        throw ParamError("engine: bond weights must be finite");
      bs.h[static_cast<std::size_t>(cut)] = bo.weights[i];
    }
    bonds_.push_back(std::move(bs));
  }

  occ_sites_.assign(static_cast<std::size_t>(L), 0);
  occ_pos_.assign(static_cast<std::size_t>(L) + 2, 0);
}

void Engine::init_invariant() {
  config_ = sample_invariant(params_, rng_);
  finalize_init();
}

void Engine::set_initial(const Configuration& config) {
  if (config.size() != params_.lattice_len)
    throw ShapeError("engine: initial configuration does not match the window");
  config_ = config;
  finalize_init();
}

void Engine::finalize_init() {
  const int L = params_.lattice_len;
  const double n = params_.n;
  const double lambda = params_.lambda;
  const double rho = params_.rho;

  config0_ = config_;
  ledger_ = CurrentLedger(L);
  std::fill(occ_pos_.begin(), occ_pos_.end(), 0);
  occupied_ = 0;
  for (int x = 1; x <= L; ++x) {
    if (config_.at(x) > 0) {
      occ_sites_[static_cast<std::size_t>(occupied_)] = x;
      occ_pos_[static_cast<std::size_t>(x)] = ++occupied_;
    }
  }

  const double n32 = std::pow(n, 1.5);
  for (auto& st : obs_) {
    st.S_g = 0.0;
    st.S_eta = 0.0;
    st.S_qv = 0.0;
    st.A_g.reset();
    st.A_eta.reset();
    st.A_qv.reset();
    double stat = 0.0;
    for (int x = 1; x <= std::min(L, st.support_cut + 1); ++x) {
      double g = config_.at(x) > 0 ? 1.0 : 0.0;
      st.S_g += (g - lambda) * st.gradw[static_cast<std::size_t>(x)];
      st.S_eta += (config_.at(x) - rho) * st.gradw[static_cast<std::size_t>(x)];
    }
    for (int c = 0; c <= std::min(L, st.support_cut); ++c) {
      double gl = c == 0 ? lambda : (config_.at(c) > 0 ? 1.0 : 0.0);
      double gr = c == L ? lambda : (config_.at(c + 1) > 0 ? 1.0 : 0.0);
      st.S_qv += (gl + gr) * st.fsq[static_cast<std::size_t>(c)];
    }
    for (int x = 1; x <= std::min(L, st.support_cut); ++x)
      stat += (config_.at(x) - rho) * st.f.F(static_cast<double>(x) / n);
    st.static0 = stat / n32;
  }

  for (auto& bs : bonds_) {
    bs.S_v = 0.0;
    bs.A_v.reset();
    bs.max_v = bs.min_v = 0.0;
    for (int c = 0; c <= L; ++c) {
      if (bs.h[static_cast<std::size_t>(c)] == 0.0) continue;
      double gl = c == 0 ? lambda : (config_.at(c) > 0 ? 1.0 : 0.0);
      double gr = c == L ? lambda : (config_.at(c + 1) > 0 ? 1.0 : 0.0);
      bs.S_v += bs.h[static_cast<std::size_t>(c)] * (gl - gr);
    }
  }

  tau_.reset();
  events_ = 0;
  initialized_ = true;
}

double Engine::field_value(std::size_t obs_index) const {
  const ObsState& st = obs_[obs_index];
  double sum = 0.0;
  const int hi = std::min(params_.lattice_len, st.support_cut);
  for (int c = 0; c <= hi; ++c)
    sum += static_cast<double>(ledger_.at(c)) * st.fx[static_cast<std::size_t>(c)];
  return sum / std::pow(static_cast<double>(params_.n), 2.5) + st.static0;
}

void Engine::accumulate(double dtau) {
  tau_.add(dtau);
  for (auto& st : obs_) {
    st.A_g.add(st.S_g * dtau);
    st.A_eta.add(st.S_eta * dtau);
    st.A_qv.add(st.S_qv * dtau);
  }
  for (auto& bs : bonds_) {
    bs.A_v.add(bs.S_v * dtau);
    double v = bs.A_v.value();
    if (v > bs.max_v) bs.max_v = v;
    if (v < bs.min_v) bs.min_v = v;
  }
}

void Engine::on_eta_change(int y, int d) {
  const std::int32_t v = config_.at(y);
  const bool now = v > 0;
  const bool was = (v - d) > 0;
  for (auto& st : obs_) st.S_eta += d * st.gradw[static_cast<std::size_t>(y)];
  if (was == now) return;
  const int gd = static_cast<int>(now) - static_cast<int>(was);
  if (gd > 0) {
    occ_sites_[static_cast<std::size_t>(occupied_)] = y;
    occ_pos_[static_cast<std::size_t>(y)] = ++occupied_;
  } else {
    int idx = occ_pos_[static_cast<std::size_t>(y)] - 1;
    int last = occ_sites_[static_cast<std::size_t>(--occupied_)];
    occ_sites_[static_cast<std::size_t>(idx)] = last;
    occ_pos_[static_cast<std::size_t>(last)] = idx + 1;
    occ_pos_[static_cast<std::size_t>(y)] = 0;
  }
  for (auto& st : obs_) {
    st.S_g += gd * st.gradw[static_cast<std::size_t>(y)];
    st.S_qv += gd * (st.fsq[static_cast<std::size_t>(y)] + st.fsq[static_cast<std::size_t>(y - 1)]);
  }
  for (auto& bs : bonds_)
    bs.S_v += gd * (bs.h[static_cast<std::size_t>(y)] - bs.h[static_cast<std::size_t>(y - 1)]);
}

JumpEvent Engine::draw_event() {
  const double lambda = params_.lambda;
  const double twoK = 2.0 * occupied_;
  const double total = twoK + 2.0 * lambda;
  const double u = rng_.uniform01() * total;
  const bool nn = params_.kernel.range == 1;
  const int L = params_.lattice_len;

  if (u < twoK) {
    double half = 0.5 * u;
    int idx = static_cast<int>(half);
    if (idx >= occupied_) idx = occupied_ - 1;
    double frac = half - static_cast<double>(idx);
    int site = occ_sites_[static_cast<std::size_t>(idx)];
    int z = nn ? (frac < 0.5 ? -1 : +1) : params_.kernel.sample_offset(frac);
    return JumpEvent::jump(site, z);
  }
  if (u < twoK + lambda) {
    double frac = (u - twoK) / lambda;
    int s = nn ? 1 : params_.kernel.sample_creation_site(frac);
    return JumpEvent::source_create(s);
  }
  double frac = (u - twoK - lambda) / lambda;
  int s = nn ? 1 : params_.kernel.sample_creation_site(frac);
  return JumpEvent::mirror_create(L + 1 - s);
}

void Engine::execute(const JumpEvent& ev) {
  EventEffects fx = apply_event(config_, ledger_, ev, params_);
  ++events_;
  if (fx.site_down) on_eta_change(fx.site_down, -1);
  if (fx.site_up) on_eta_change(fx.site_up, +1);
}

void Engine::step() {
  if (!initialized_) init_invariant();
  double total = total_activation();
  if (total <= 0.0) throw Error("engine: no active clocks");
  double dtau = rng_.exponential(total);
  accumulate(dtau);
  JumpEvent ev = draw_event();
  ev.micro_time = dtau;
  execute(ev);
}

Trajectory Engine::run(const std::vector<double>& sample_times) {
  if (!initialized_) init_invariant();

  const double n4 = params_.time_scale();
  const double n = params_.n;

  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    if (sample_times[i] < macro_time())
      throw ParamError("run: sample times must not precede the current time");
    if (i > 0 && sample_times[i] <= sample_times[i - 1])
      throw ParamError("run: sample times must be increasing");
    if (params_.horizon > 0.0 && sample_times[i] > params_.horizon)
      throw ParamError("run: sample time beyond the horizon");
  }

  Trajectory traj;
  traj.params = params_;
  traj.obs_names.reserve(obs_.size());
  traj.obs.resize(obs_.size());
  for (std::size_t i = 0; i < obs_.size(); ++i) {
    traj.obs_names.push_back(obs_[i].name);
    traj.obs[i].field0 = obs_[i].static0;
  }
  traj.bond_names.reserve(bonds_.size());
  traj.bonds.resize(bonds_.size());
  for (auto& bs : bonds_) traj.bond_names.push_back(bs.name);

  std::vector<double> ts_micro(sample_times.size());
  for (std::size_t i = 0; i < sample_times.size(); ++i)
    ts_micro[i] = sample_times[i] * n4;

  const double qv_scale = 1.0 / (n * n4);

  auto record_sample = [&](std::size_t si) {
    traj.t.push_back(sample_times[si]);
    traj.j0.push_back(ledger_.at(0));
    traj.ledger_hash.push_back(ledger_.hash());
    if (options_.check_continuity_at_samples)
      traj.continuity_ok =
          traj.continuity_ok && check_continuity(config0_, config_, ledger_);
    for (std::size_t i = 0; i < obs_.size(); ++i) {
      ObsState& st = obs_[i];
      ObsSeries& ser = traj.obs[i];
      ser.field.push_back(field_value(i));
      ser.grad_g_integral.push_back(st.A_g.value() / n4);
      ser.grad_eta_integral.push_back(st.A_eta.value() / n4);
      ser.qv.push_back(st.A_qv.value() * qv_scale);
    }
    for (std::size_t i = 0; i < bonds_.size(); ++i) {
      BondState& bs = bonds_[i];
      traj.bonds[i].integral.push_back(bs.A_v.value() / n4);
      double sup = std::max(bs.max_v * bs.max_v, bs.min_v * bs.min_v);
      traj.bonds[i].supsq.push_back(sup / (n4 * n4));
    }
    if (options_.record_snapshots) traj.snapshots.push_back(config_);
  };

  std::size_t si = 0;
  const std::size_t m = sample_times.size();

  while (true) {
    while (si < m && ts_micro[si] <= tau_.value()) record_sample(si++);
    if (si >= m) break;
    if (events_ >= options_.max_events) {
      traj.budget_exceeded = true;
      break;
    }
    double total = total_activation();
    if (total <= 0.0) {
      // Frozen state (lambda = 0, empty lattice): integrals stay linear.
      while (si < m) {
        accumulate(ts_micro[si] - tau_.value());
        record_sample(si++);
      }
      break;
    }
    double dtau = rng_.exponential(total);
    double t_event = tau_.value() + dtau;
    if (si < m && ts_micro[si] <= t_event) {
      while (si < m && ts_micro[si] <= t_event) {
        accumulate(ts_micro[si] - tau_.value());
        record_sample(si++);
      }
      accumulate(t_event - tau_.value());
    } else {
      accumulate(dtau);
    }
    JumpEvent ev = draw_event();
    ev.micro_time = dtau;
    execute(ev);
    if (options_.record_log) traj.log.push_back(ev);
  }

  traj.events = events_;
  return traj;
}

Trajectory run_replica(const ProcessParams& params,
                       const std::vector<double>& sample_times,
                       const std::vector<Observable>& observables,
                       std::uint64_t seed, EngineOptions options,
                       const std::vector<BondObservable>& bonds) {
  Engine engine(params, observables, seed, options, bonds);
  engine.init_invariant();
  return engine.run(sample_times);
}

std::vector<Trajectory> run_ensemble(const ProcessParams& params,
                                     const std::vector<double>& sample_times,
                                     const std::vector<Observable>& observables,
                                     int replicas, std::uint64_t master_seed,
                                     EngineOptions options,
                                     const std::vector<BondObservable>& bonds,
                                     int threads) {
  if (replicas <= 0) throw ParamError("ensemble: replicas must be positive");
  if (threads <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    threads = static_cast<int>(std::max(1u, hw));
  }
  threads = std::min(threads, replicas);

  std::vector<Trajectory> out(static_cast<std::size_t>(replicas));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      int r = next.fetch_add(1);
      if (r >= replicas || failed.load()) break;
      try {
        out[static_cast<std::size_t>(r)] =
            run_replica(params, sample_times, observables,
                        derive_stream_seed(master_seed, static_cast<std::uint64_t>(r)),
                        options, bonds);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        error_message = e.what();
        failed.store(true);
        break;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw Error("ensemble: replica failed: " + error_message);
  return out;
}

}  // namespace zr
