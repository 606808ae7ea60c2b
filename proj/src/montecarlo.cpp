#include "crn/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "crn/array_signal.hpp"
#include "crn/clutter.hpp"
#include "crn/fusion.hpp"

namespace crn {

namespace {

std::vector<int> map_bins(const std::vector<int>& ref_bins, const std::vector<int>& mapping) {
  std::vector<int> out;
  out.reserve(ref_bins.size());
  for (int b : ref_bins) out.push_back(mapping[static_cast<std::size_t>(b)]);
  return out;
}

std::vector<int> truth_bins(const std::vector<ActiveTarget>& truth) {
  std::vector<int> bins;
  for (const auto& t : truth) bins.push_back(t.bin);
  return bins;
}

}  // namespace

TrialResult run_trial(const Scenario& sc, Policy policy, std::uint64_t seed) {
  validate(sc);
  const RadarParams& params = sc.radar;
  const NetworkConfig& net = sc.network;
  const int L = params.n_bins;
  const int R = net.fusion_mode == FusionMode::none ? 1 : net.n_radars;
  const int n_cpis = sc.timeline.n_cpis;
  const int t_max = sc.timeline.t_max;
  const int b_max = max_beam_bins(sc);

  const Ar2dModel model = model_from_config(sc.clutter);
  const double sigma_ref = nominal_power(model);

  TrialResult out;
  out.seed = seed;
  out.per_cpi_decisions.reserve(static_cast<std::size_t>(n_cpis));

  QTable qt = make_qtable(t_max, b_max, sc.sarsa);
  Rng agent_rng = make_stream(Stream::agent, {seed});

  RlAction current{0, {}};
  if (policy == Policy::scanning) current = {1, {0}};
  RlState prev_state{0};
  bool have_prev = false;

  RadarReturns returns(static_cast<std::size_t>(R), std::vector<CpiReturn>(static_cast<std::size_t>(L)));
  RadarSteerings steerings(static_cast<std::size_t>(R), std::vector<VirtualSteering>(static_cast<std::size_t>(L)));

  for (int p = 0; p < n_cpis; ++p) {
    const std::vector<ActiveTarget> truth = active_targets(sc.timeline, p);
    if (policy == Policy::optimal) {
      const std::vector<int> bins = truth_bins(truth);
      PolicyContext ctx{p, L, b_max, &bins, nullptr};
      current = baseline_policy(Policy::optimal, ctx);
    }

    for (int i = 0; i < R; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      const std::vector<int>& mapping = net.bin_mapping[iu];
      const std::uint64_t radar_seed = net.rng_seeds[iu];
      const Beamformer bf = make_beamformer(map_bins(current.bins, mapping), params);

      std::vector<TargetAmplitude> targets;
      for (const auto& t : truth) {
        Rng phase_rng = make_stream(Stream::target_phase, {seed, radar_seed, static_cast<std::uint64_t>(t.event),
                                                           static_cast<std::uint64_t>(p)});
        const double theta = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(phase_rng);
        const double mag = amplitude_from_snr(t.snr_db[iu], sigma_ref);
        targets.push_back({mapping[static_cast<std::size_t>(t.bin)], std::polar(mag, theta), t.angle_offset});
      }

      CVec shared;
      if (sc.clutter.shared_across_bins) {
        Rng crng = make_stream(Stream::clutter, {seed, radar_seed, static_cast<std::uint64_t>(L), static_cast<std::uint64_t>(p)});
        shared = generate(model, params.n_channels(), params.pulses_per_cpi, sc.clutter.burn_in, crng).vectorized;
      }
      for (int q = 0; q < L; ++q) {
        const auto qu = static_cast<std::size_t>(q);
        steerings[iu][qu] = virtual_steering(bf, q, params);
        CVec clutter;
        if (sc.clutter.shared_across_bins) {
          clutter = shared;
        } else {
          Rng crng = make_stream(Stream::clutter, {seed, radar_seed, static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(p)});
          clutter = generate(model, params.n_channels(), params.pulses_per_cpi, sc.clutter.burn_in, crng).vectorized;
        }
        returns[iu][qu] = synthesize_return(targets, bf, clutter, q, params);
        returns[iu][qu].radar = i;
        returns[iu][qu].cpi = p;
      }
    }

    StatisticVector stat;
    switch (net.fusion_mode) {
      case FusionMode::none: {
        StatisticVector local = detect_cpi(returns[0], steerings[0], params, &out.floor);
        stat = make_statistic_vector(to_reference_order(local.lambda, net.bin_mapping[0]), local.threshold, p);
        break;
      }
      case FusionMode::decentralized: {
        std::vector<StatisticVector> per(static_cast<std::size_t>(R));
        for (int i = 0; i < R; ++i)
          per[static_cast<std::size_t>(i)] = detect_cpi(returns[static_cast<std::size_t>(i)],
                                                        steerings[static_cast<std::size_t>(i)], params, &out.floor);
        stat = fuse_decentralized(per, net, params.pfa_nominal).statistic;
        break;
      }
      case FusionMode::centralized:
        stat = fuse_centralized(returns, steerings, params, net, &out.floor).statistic;
        break;
    }
    stat.cpi = p;

    const RlState state = extract_state(stat, t_max);
    const double reward = compute_reward(stat, detected_bins(stat));
    out.per_cpi_decisions.push_back(stat.decisions);
    out.per_cpi_pd.push_back(stat.pd_estimates);
    out.per_cpi_lambda.push_back(stat.lambda);
    out.per_cpi_state.push_back(state.s);
    out.actions.push_back(current);
    out.rewards.push_back(reward);

    // Choose the action for CPI p + 1.
    RlAction next;
    switch (policy) {
      case Policy::sarsa: {
        qt.epsilon = epsilon_at(sc.sarsa, p);
        next = select_action_sarsa(qt, state, stat, agent_rng);
        if (have_prev) qt = update_sarsa(qt, prev_state, current, reward, state, next);
        break;
      }
      case Policy::adaptive: {
        PolicyContext ctx{p + 1, L, b_max, nullptr, &stat};
        next = baseline_policy(Policy::adaptive, ctx);
        break;
      }
      case Policy::scanning:
      case Policy::orthogonal: {
        PolicyContext ctx{p + 1, L, b_max, nullptr, nullptr};
        next = baseline_policy(policy, ctx);
        break;
      }
      case Policy::optimal:
        next = current;
        break;
    }
    prev_state = state;
    have_prev = true;
    current = std::move(next);
  }
  return out;
}

std::vector<TrialResult> run_trials(const Scenario& sc, Policy policy, int n_trials, std::uint64_t seed0, int workers) {
  if (n_trials < 1) throw std::invalid_argument("run_trials: n_trials must be >= 1");
  validate(sc);
  std::vector<TrialResult> results(static_cast<std::size_t>(n_trials));
  workers = std::max(1, std::min(workers, n_trials));
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  auto work = [&](int w) {
    try {
      for (int t = next++; t < n_trials; t = next++)
        results[static_cast<std::size_t>(t)] = run_trial(sc, policy, seed0 + static_cast<std::uint64_t>(t));
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
      next = n_trials;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

std::vector<std::vector<bool>> occupancy(const Scenario& sc) {
  const int L = sc.radar.n_bins;
  std::vector<std::vector<bool>> occ(static_cast<std::size_t>(sc.timeline.n_cpis),
                                     std::vector<bool>(static_cast<std::size_t>(L), false));
  for (const auto& e : sc.timeline.events)
    for (int p = e.cpi_start; p <= e.cpi_end; ++p) occ[static_cast<std::size_t>(p)][static_cast<std::size_t>(e.bin)] = true;
  return occ;
}

MetricsReport aggregate(const Scenario& sc, Policy policy, const std::vector<TrialResult>& trials,
                        const CampaignOptions& opts) {
  validate(sc);
  const int L = sc.radar.n_bins;
  const int n_cpis = sc.timeline.n_cpis;
  const auto occ = occupancy(sc);
  MetricsReport rep;
  rep.policy = policy;
  rep.n_trials = static_cast<int>(trials.size());
  rep.n_cpis = n_cpis;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<int> bins;
  for (const auto& e : sc.timeline.events)
    if (std::find(bins.begin(), bins.end(), e.bin) == bins.end()) bins.push_back(e.bin);
  std::sort(bins.begin(), bins.end());

  for (int b : bins) {
    std::vector<double> hits(static_cast<std::size_t>(n_cpis), 0.0), acq(static_cast<std::size_t>(n_cpis), 0.0);
    for (const auto& tr : trials) {
      const auto curve = acquisition_curve(tr.per_cpi_decisions, b, sc.timeline.m_acq, sc.timeline.n_acq);
      for (int p = 0; p < n_cpis; ++p) {
        hits[static_cast<std::size_t>(p)] += tr.per_cpi_decisions[static_cast<std::size_t>(p)][static_cast<std::size_t>(b)] ? 1.0 : 0.0;
        acq[static_cast<std::size_t>(p)] += curve[static_cast<std::size_t>(p)];
      }
    }
    for (int p = 0; p < n_cpis; ++p) {
      const auto pu = static_cast<std::size_t>(p);
      const bool active = occ[pu][static_cast<std::size_t>(b)];
      hits[pu] = active ? hits[pu] / rep.n_trials : nan;
      acq[pu] = active ? acq[pu] / rep.n_trials : nan;
    }
    rep.pd_curve[b] = std::move(hits);
    rep.pacq_curve[b] = std::move(acq);
  }

  for (const auto& tr : trials) {
    rep.floor.merge(tr.floor);
    for (int p = 0; p < n_cpis; ++p) {
      const auto& row = occ[static_cast<std::size_t>(p)];
      for (int l = 0; l < L; ++l) {
        if (row[static_cast<std::size_t>(l)]) continue;
        if (opts.exclude_adjacent && ((l > 0 && row[static_cast<std::size_t>(l - 1)]) ||
                                      (l + 1 < L && row[static_cast<std::size_t>(l + 1)])))
          continue;
        ++rep.opportunities;
        if (tr.per_cpi_decisions[static_cast<std::size_t>(p)][static_cast<std::size_t>(l)]) ++rep.false_alarms;
      }
    }
  }
  rep.pfa_measured = rep.opportunities ? static_cast<double>(rep.false_alarms) / static_cast<double>(rep.opportunities) : 0.0;
  return rep;
}

MetricsReport run_campaign(const Scenario& sc, Policy policy, int n_trials, std::uint64_t seed0,
                           const CampaignOptions& opts) {
  return aggregate(sc, policy, run_trials(sc, policy, n_trials, seed0, opts.workers), opts);
}

std::vector<double> acquisition_curve(const DecisionMatrix& decisions, int target_bin, int m, int n) {
  if (m > n) throw std::invalid_argument("acquisition_curve: m must be <= n");
  if (m < 1 || n < 1) throw std::invalid_argument("acquisition_curve: m, n must be >= 1");
  const auto n_cpis = static_cast<int>(decisions.size());
  std::vector<double> curve(static_cast<std::size_t>(n_cpis), 0.0);
  int count = 0;
  for (int p = 0; p < n_cpis; ++p) {
    const auto& row = decisions[static_cast<std::size_t>(p)];
    count += row.at(static_cast<std::size_t>(target_bin)) ? 1 : 0;
    if (p >= n) count -= decisions[static_cast<std::size_t>(p - n)][static_cast<std::size_t>(target_bin)] ? 1 : 0;
    if (p >= n - 1 && count >= m) curve[static_cast<std::size_t>(p)] = 1.0;
  }
  return curve;
}

}  // namespace crn
