#include "onestep/numeric.hpp"

#include "onestep/errors.hpp"

namespace onestep {

double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

double mean_of(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("mean_of: empty input");
  return compensated_sum(xs) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double m = mean_of(xs);
  CompensatedSum acc;
  for (double x : xs) {
    const double d = x - m;
    acc.add(d * d);
  }
  return acc.value() / static_cast<double>(n - 1);
}

OlsFit ols_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw ShapeError("ols_fit: length mismatch");
  if (xs.size() < 2) throw DomainError("ols_fit: need at least two points");
  const double xbar = mean_of(xs);
  const double ybar = mean_of(ys);
  CompensatedSum sxy, sxx;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy.add((xs[i] - xbar) * (ys[i] - ybar));
    sxx.add((xs[i] - xbar) * (xs[i] - xbar));
  }
  if (sxx.value() == 0.0) throw DomainError("ols_fit: degenerate abscissae");
  OlsFit fit;
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = ybar - fit.slope * xbar;
  return fit;
}

std::uint64_t CounterRng::next_below(std::uint64_t n) {
  if (n == 0) throw DomainError("next_below: n must be positive");
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % n;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0xD1B54A32D192ED03ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

} // namespace onestep
