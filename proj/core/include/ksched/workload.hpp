#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ksched/task.hpp"

namespace ksched::workload {

/// Deterministic generator: xoshiro256** seeded through splitmix64, with
/// a fixed uniform-double mapping so that identical seeds give identical
/// streams on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform01();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

 private:
  std::uint64_t state_[4];
};

/// Stream seed for a task set inside a sweep: base_seed XOR set_index.
std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t set_index);

struct GenConfig {
  int n = 10;
  double target_util = 0.5;
  /// Orders of magnitude spanned by the periods: T in [1, 10^p] ms.
  int period_magnitude = 1;
  DeadlineModel deadline_model = DeadlineModel::implicit;
  std::uint64_t seed = 0;
};

/// Deadline ratio ranges used by the generator.
inline constexpr double kConstrainedRatioLo = 0.8;
inline constexpr double kConstrainedRatioHi = 1.0;
inline constexpr double kArbitraryRatioLo = 1.0;
inline constexpr double kArbitraryRatioHi = 2.0;

struct ResampleCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kUunifastResampleCap = 10'000;

/// n utilizations summing to target_util, each in (0, 1]. The whole
/// vector is resampled while any entry exceeds one; throws
/// ResampleCapError after 10^4 attempts.
std::vector<double> uunifast_discard(int n, double target_util, Rng& rng);

/// Log-uniform periods: T = 10^x ms with x uniform in [0, p], rounded to
/// four decimal digits.
std::vector<double> sample_periods(int n, int p, Rng& rng);

/// Full task set: UUniFast-Discard utilizations, log-uniform periods,
/// C_i = T_i * U_i, deadlines per the model, deadline-monotonic priority
/// order. Deterministic under cfg.seed.
TaskSet make_taskset(const GenConfig& cfg);

}  // namespace ksched::workload
