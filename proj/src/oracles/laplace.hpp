#ifndef DALEMBERT_ORACLES_LAPLACE_HPP
#define DALEMBERT_ORACLES_LAPLACE_HPP

#include <complex>
#include <functional>

#include "model_config.hpp"

namespace dalembert
{

// Laplace-domain Green's function G(x, xi, s) = c phi_a(min) psi_a(max) / (s Delta_a),
// evaluated directly from the hyperbolic profiles.
std::complex<double> laplace_greens(const ValidatedConfig &config, double x, double xi,
                                    std::complex<double> s);

//
// Fourier-series Bromwich inversion with an exponential spectral filter. The
// abscissa is placed `damping / (2T)` to the right of the rightmost zero of
// Delta_a, with period 2T = 2 * period_factor * t.
//
struct LaplaceInverter
{
  int terms = 20000;  // per L/c of elapsed time, never fewer than this
  double period_factor = 4.0;
  double damping = 30.0;
  double filter_strength = 36.0;
  int filter_order = 10;
  double max_error = 1e-6;  // NoConvergence above this

  // Throws Error(NoConvergence) when the K and 0.6K partial sums disagree by more
  // than max_error, or when the profiles overflow.
  double invert(const ValidatedConfig &config, double x, double xi, double t) const;

  // Inverts an arbitrary transform analytic for Re s > growth. The term count
  // scales with t / time_scale.
  double invert_transform(const std::function<std::complex<double>(std::complex<double>)> &transform,
                          double t, double growth, double time_scale) const;
};

// Upper bound on the real part of any zero of Delta_a (never below 0).
double growth_bound(const ValidatedConfig &config);

inline double laplace_invert_G(const ValidatedConfig &config, double x, double xi, double t)
{
  return LaplaceInverter{}.invert(config, x, xi, t);
}

}  // namespace dalembert

#endif  // DALEMBERT_ORACLES_LAPLACE_HPP
