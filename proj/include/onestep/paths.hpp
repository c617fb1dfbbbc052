#pragma once

#include <string>
#include <vector>

#include "onestep/distributions.hpp"
#include "onestep/functionals.hpp"

namespace onestep {

/// The mixture segment joining an initial distribution estimate to the
/// target: eps = 0 is the target, eps = 1 the initial estimate.
template <class Dist>
struct PathT {
  Dist target;
  Dist initial;
  double distance = 0.0; // cached l2_distance(target, initial)
};

using Path = PathT<GridDensity>;
using DiscretePath = PathT<DiscreteDist>;

Path make_path(GridDensity target, GridDensity initial);
DiscretePath make_path(DiscreteDist target, DiscreteDist initial);

/// T evaluated along the path: values[i] = T(mix(target, initial, eps[i])),
/// with deltas[i] = eps[i] * distance the absolute l2 distance from the
/// target (the rescaled parametrization of the same segment).
struct VCurve {
  std::vector<double> eps;
  std::vector<double> deltas;
  std::vector<double> values;

  std::string to_csv() const; // columns eps, delta, value
};

VCurve v_curve(const Path& path, const Functional& t, std::size_t grid_size = 101);
VCurve v_curve(const DiscretePath& path, const Functional& t,
               std::size_t grid_size = 101);

/// Analytic slope of eps -> T(P_eps) at eps = 1, via the influence function
/// at the initial estimate.
double pathwise_derivative_at_one(const Path& path, const Functional& t);
double pathwise_derivative_at_one(const DiscretePath& path, const Functional& t);

/// Finite-difference confirmation of the slope at eps = 1: second-order
/// one-sided stencil, staying inside [0,1]. Requires 0 < h <= 0.25.
double pathwise_derivative_fd(const Path& path, const Functional& t,
                              double h = 1e-5);
double pathwise_derivative_fd(const DiscretePath& path, const Functional& t,
                              double h = 1e-5);

/// y-intercept of the tangent line at eps = 1: T(initial) minus the slope.
/// This is the population (infinite-sample) one-step value.
double one_step_intercept(const Path& path, const Functional& t);
double one_step_intercept(const DiscretePath& path, const Functional& t);

/// Second-order remainder of the tangent approximation at the target:
/// one_step_intercept - T(target). For the integrated squared density this
/// equals minus the squared l2 distance, exactly.
double exact_r2(const Path& path, const Functional& t);
double exact_r2(const DiscretePath& path, const Functional& t);

/// Maps an absolute distance delta in [0, distance] to the eps index of the
/// same point on the path. Degenerate paths (distance 0) are an error.
double rescale(const Path& path, double delta);
double rescale(const DiscretePath& path, double delta);

struct QuadFit {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double max_residual = 0.0;
};

/// Least-squares degree-2 polynomial in eps through the curve (normal
/// equations, eps grid centered at 0.5 for conditioning).
QuadFit quadratic_fit(const VCurve& curve);

} // namespace onestep
