#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace onestep {

/// 95% Wald interval half-width multiplier (standard normal quantile).
inline constexpr double kWald95 = 1.959964;

/// Streaming compensated (Neumaier) accumulator. Keeps quadrature sums and
/// sample averages accurate to a few ulps independent of length.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double compensated_sum(std::span<const double> xs);
double mean_of(std::span<const double> xs);

/// Unbiased (n-1 denominator) sample variance; 0 for fewer than two points.
double sample_variance(std::span<const double> xs);

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares of ys on xs. Requires equal lengths >= 2.
OlsFit ols_fit(std::span<const double> xs, std::span<const double> ys);

/// Deterministic counter-style generator (SplitMix64). The state advances by
/// a fixed Weyl increment and every output is a pure mix of seed + counter,
/// so identical seeds reproduce identical streams on any platform.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n);

private:
  std::uint64_t state_;
};

/// Derives an independent stream seed for a named sub-purpose (sampling vs.
/// fold splitting) so the two never consume the same underlying sequence.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace onestep
