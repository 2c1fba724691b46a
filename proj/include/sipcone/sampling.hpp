#pragma once

#include "sipcone/geometry.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace sipcone {

/// Engine used by every generator. Seeds are always explicit.
using Rng = std::mt19937_64;

/// Standard normal variate (Boost.Random, identical across standard libraries).
double normal_variate(Rng& rng);
/// Uniform variate in [0, 1).
double uniform_variate(Rng& rng);

/// Deterministic, roughly uniform unit directions in R^n:
/// equally spaced angles for n = 2, a Fibonacci lattice (turned by an
/// angle derived from the seed) for n = 3 and
/// seeded Gaussian directions otherwise.
std::vector<Vec> sphere_directions(int n, int count, std::uint64_t seed = 0x5eed);

/// The 2n signed coordinate axes.
std::vector<Vec> axis_directions(int n);

/// Unit vectors in the column span of an orthonormal `basis`: +-b for one
/// column, `count` equally spaced angles for two, seeded Gaussian otherwise.
std::vector<Vec> span_directions(const Mat& basis, int count, std::uint64_t seed = 0x9a7e);

/// Directions used for sampled sup/inf over the sphere: axes plus a lattice.
const std::vector<Vec>& probe_directions(int n);

/// Minimizes a convex function of one variable over the whole line. The
/// bracket grows from [-scale, scale] until both ends rise above f(0).
struct LineMinimum {
    double argmin;
    double value;
};
LineMinimum minimize_convex_line(const std::function<double(double)>& f, double scale);

/// Brent minimization on [lo, hi].
LineMinimum minimize_on_interval(const std::function<double(double)>& f, double lo, double hi);

/// Bisection for a sign change: f(lo) and f(hi) must have opposite signs
/// (zero counts as the sign of `lo`'s side never). Stops after `max_iter`
/// halvings or when the bracket cannot shrink further.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, int max_iter = 80);

/// Nelder-Mead simplex minimization.
struct SimplexResult {
    Vec argmin;
    double value;
    bool converged;
};
SimplexResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& start,
                          double initial_step, int max_iter = 2000, double ftol = 1e-14);

}  // namespace sipcone
