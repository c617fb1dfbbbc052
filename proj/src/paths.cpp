#include "onestep/paths.hpp"

#include <cmath>
#include <cstdio>

#include "onestep/numeric.hpp"

namespace onestep {

std::string VCurve::to_csv() const {
  std::string out = "eps,delta,value\n";
  char buf[120];
  for (std::size_t i = 0; i < eps.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", eps[i], deltas[i],
                  values[i]);
    out += buf;
  }
  return out;
}

Path make_path(GridDensity target, GridDensity initial) {
  const double d = l2_distance(target, initial);
  return Path{std::move(target), std::move(initial), d};
}

DiscretePath make_path(DiscreteDist target, DiscreteDist initial) {
  const double d = l2_distance(target, initial);
  return DiscretePath{std::move(target), std::move(initial), d};
}

namespace {

template <class Dist>
VCurve v_curve_impl(const PathT<Dist>& path, const Functional& t,
                    std::size_t grid_size) {
  if (grid_size < 3) throw DomainError("v_curve: need at least 3 grid points");
  VCurve curve;
  curve.eps.resize(grid_size);
  curve.deltas.resize(grid_size);
  curve.values.resize(grid_size);
  const double denom = static_cast<double>(grid_size - 1);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double eps = static_cast<double>(i) / denom;
    curve.eps[i] = eps;
    curve.deltas[i] = eps * path.distance;
    curve.values[i] = t.evaluate(mix(path.target, path.initial, eps));
  }
  return curve;
}

template <class Dist>
double derivative_fd_impl(const PathT<Dist>& path, const Functional& t,
                          double h) {
  if (!(h > 0.0 && h <= 0.25))
    throw DomainError("pathwise_derivative_fd: h must lie in (0, 0.25]");
  const double v1 = t.evaluate(path.initial);
  const double v1m = t.evaluate(mix(path.target, path.initial, 1.0 - h));
  const double v1mm = t.evaluate(mix(path.target, path.initial, 1.0 - 2.0 * h));
  return (3.0 * v1 - 4.0 * v1m + v1mm) / (2.0 * h);
}

} // namespace

VCurve v_curve(const Path& path, const Functional& t, std::size_t grid_size) {
  return v_curve_impl(path, t, grid_size);
}

VCurve v_curve(const DiscretePath& path, const Functional& t,
               std::size_t grid_size) {
  return v_curve_impl(path, t, grid_size);
}

double pathwise_derivative_at_one(const Path& path, const Functional& t) {
  // -integral of IF(z, initial) (p - ptilde) dz
  std::vector<double> infl(path.initial.size());
  t.influence_on_grid(path.initial, infl);
  CompensatedSum acc;
  for (std::size_t i = 0; i < infl.size(); ++i)
    acc.add(infl[i] * (path.target.values()[i] - path.initial.values()[i]));
  return -acc.value() * path.target.geometry().step();
}

double pathwise_derivative_at_one(const DiscretePath& path, const Functional& t) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < path.initial.size(); ++i)
    acc.add(t.influence_index(i, path.initial) *
            (path.target.masses()[i] - path.initial.masses()[i]));
  return -acc.value();
}

double pathwise_derivative_fd(const Path& path, const Functional& t, double h) {
  return derivative_fd_impl(path, t, h);
}

double pathwise_derivative_fd(const DiscretePath& path, const Functional& t,
                              double h) {
  return derivative_fd_impl(path, t, h);
}

double one_step_intercept(const Path& path, const Functional& t) {
  return t.evaluate(path.initial) - pathwise_derivative_at_one(path, t);
}

double one_step_intercept(const DiscretePath& path, const Functional& t) {
  return t.evaluate(path.initial) - pathwise_derivative_at_one(path, t);
}

double exact_r2(const Path& path, const Functional& t) {
  return one_step_intercept(path, t) - t.evaluate(path.target);
}

double exact_r2(const DiscretePath& path, const Functional& t) {
  return one_step_intercept(path, t) - t.evaluate(path.target);
}

namespace {

template <class Dist>
double rescale_impl(const PathT<Dist>& path, double delta) {
  if (!(path.distance > 0.0))
    throw DomainError("rescale: degenerate path (target equals initial)");
  if (!(delta >= 0.0 && delta <= path.distance))
    throw DomainError("rescale: delta must lie in [0, distance]");
  return delta / path.distance;
}

} // namespace

double rescale(const Path& path, double delta) { return rescale_impl(path, delta); }
double rescale(const DiscretePath& path, double delta) {
  return rescale_impl(path, delta);
}

QuadFit quadratic_fit(const VCurve& curve) {
  const std::size_t n = curve.eps.size();
  if (n < 3 || curve.values.size() != n)
    throw DomainError("quadratic_fit: need at least 3 curve points");

  // Normal equations for v ~ a0 + a1 u + a2 u^2 with u = eps - 0.5.
  double s[5] = {0, 0, 0, 0, 0};
  double b[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double u = curve.eps[i] - 0.5;
    const double u2 = u * u;
    s[0] += 1.0;
    s[1] += u;
    s[2] += u2;
    s[3] += u2 * u;
    s[4] += u2 * u2;
    b[0] += curve.values[i];
    b[1] += curve.values[i] * u;
    b[2] += curve.values[i] * u2;
  }
  double m[3][4] = {{s[0], s[1], s[2], b[0]},
                    {s[1], s[2], s[3], b[1]},
                    {s[2], s[3], s[4], b[2]}};
  // Gaussian elimination with partial pivoting on the 3x3 system.
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0) throw DomainError("quadratic_fit: singular system");
    if (piv != col)
      for (int c = 0; c < 4; ++c) std::swap(m[piv][c], m[col][c]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  const double a0 = m[0][3] / m[0][0];
  const double a1 = m[1][3] / m[1][1];
  const double a2 = m[2][3] / m[2][2];

  QuadFit fit;
  fit.c2 = a2;
  fit.c1 = a1 - a2;
  fit.c0 = a0 - 0.5 * a1 + 0.25 * a2;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = curve.eps[i] - 0.5;
    const double pred = a0 + a1 * u + a2 * u * u;
    fit.max_residual = std::max(fit.max_residual, std::abs(pred - curve.values[i]));
  }
  return fit;
}

} // namespace onestep
