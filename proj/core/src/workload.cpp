#include "ksched/workload.hpp"

#include <cmath>
#include <stdexcept>

namespace ksched::workload {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& word : state_) word = splitmix64(s);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform01() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t set_index) {
  return base_seed ^ set_index;
}

std::vector<double> uunifast_discard(int n, double target_util, Rng& rng) {
  if (n < 1) throw std::invalid_argument("uunifast_discard: n < 1");
  if (!(target_util > 0.0) || target_util > double(n))
    throw std::invalid_argument("uunifast_discard: target out of (0, n]");
  std::vector<double> utils(n);
  for (int attempt = 0; attempt < kUunifastResampleCap; ++attempt) {
    double sum = target_util;
    bool valid = true;
    for (int i = 1; i < n; ++i) {
      const double next = sum * std::pow(rng.uniform01(), 1.0 / double(n - i));
      utils[i - 1] = sum - next;
      if (utils[i - 1] > 1.0) valid = false;
      sum = next;
    }
    utils[n - 1] = sum;
    if (sum > 1.0) valid = false;
    if (valid) return utils;
  }
  throw ResampleCapError("uunifast_discard: resample cap exceeded");
}

std::vector<double> sample_periods(int n, int p, Rng& rng) {
  if (p < 1) throw std::invalid_argument("sample_periods: p < 1");
  std::vector<double> periods(n);
  for (double& t : periods) {
    const double value = std::pow(10.0, rng.uniform(0.0, double(p)));
    t = std::round(value * 1e4) / 1e4;
  }
  return periods;
}

TaskSet make_taskset(const GenConfig& cfg) {
  Rng rng(cfg.seed);
  const std::vector<double> utils = uunifast_discard(cfg.n, cfg.target_util, rng);
  const std::vector<double> periods = sample_periods(cfg.n, cfg.period_magnitude, rng);

  TaskSet ts;
  ts.model = cfg.deadline_model;
  ts.tasks.reserve(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    Task t;
    t.id = i;
    t.period = periods[i];
    t.wcet = periods[i] * utils[i];
    switch (cfg.deadline_model) {
      case DeadlineModel::implicit:
        t.deadline = t.period;
        break;
      case DeadlineModel::constrained:
        t.deadline =
            t.period * rng.uniform(kConstrainedRatioLo, kConstrainedRatioHi);
        break;
      case DeadlineModel::arbitrary:
        t.deadline =
            t.period * rng.uniform(kArbitraryRatioLo, kArbitraryRatioHi);
        break;
    }
    ts.tasks.push_back(t);
  }
  return assign_priorities(ts, PriorityPolicy::deadline_monotonic);
}

}  // namespace ksched::workload
