#include "oracles/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace dalembert
{

namespace
{

using cplx = std::complex<double>;

}  // namespace

cplx laplace_greens(const ValidatedConfig &config, double x, double xi, cplx s)
{
  const double L = config.length();
  const double c = config.wave_speed();
  const double h1 = config.h1();
  const double h2 = config.h2();
  const double h3 = config.h3();
  const double a = config.damper_position();

  auto phi = [&](double y) { return std::cosh(s * y / c) + h1 * std::sinh(s * y / c); };
  auto psi = [&](double y) {
    return std::cosh(s * (L - y) / c) + h2 * std::sinh(s * (L - y) / c);
  };
  cplx delta = (1.0 + h1 * h2) * std::sinh(s * L / c) + (h1 + h2) * std::cosh(s * L / c);

  const double lo = std::min(x, xi);
  const double hi = std::max(x, xi);
  cplx left = phi(lo);
  cplx right = psi(hi);
  if (config.has_internal_damper())
  {
    const cplx phi_a = phi(a);
    const cplx psi_a = psi(a);
    delta += 2.0 * h3 * phi_a * psi_a;
    if (lo > a)
    {
      left += 2.0 * h3 * phi_a * std::sinh(s * (lo - a) / c);
    }
    if (hi < a)
    {
      right += 2.0 * h3 * psi_a * std::sinh(s * (a - hi) / c);
    }
  }
  return c * left * right / (s * delta);
}

double growth_bound(const ValidatedConfig &config)
{
  const double L = config.length();
  const double c = config.wave_speed();
  const double h1 = config.h1();
  const double h2 = config.h2();
  const double h3 = config.h3();
  const double a = config.damper_position();

  // Zeros of Delta_a solve 1 + sum b_k e^{-alpha_k s} = 0, which needs
  // sum |b_k| e^{-alpha_k Re s} >= 1.
  std::vector<double> b{(1.0 - h1) * (1.0 - h2) * (1.0 - h3) / ((1.0 + h1) * (1.0 + h2) * (1.0 + h3))};
  std::vector<double> alpha{2.0 * L / c};
  if (config.has_internal_damper())
  {
    b.push_back((1.0 - h1) * h3 / ((1.0 + h1) * (1.0 + h3)));
    alpha.push_back(2.0 * a / c);
    b.push_back((1.0 - h2) * h3 / ((1.0 + h2) * (1.0 + h3)));
    alpha.push_back(2.0 * (L - a) / c);
  }
  auto excess = [&](double sigma) {
    double sum = -1.0;
    for (std::size_t k = 0; k < b.size(); ++k)
    {
      sum += std::abs(b[k]) * std::exp(-alpha[k] * sigma);
    }
    return sum;
  };
  if (excess(0.0) < 0.0)
  {
    return 0.0;
  }
  double lo = 0.0;
  double hi = 1.0;
  while (excess(hi) >= 0.0)
  {
    hi *= 2.0;
  }
  for (int k = 0; k < 200 && hi - lo > 1e-12 * hi; ++k)
  {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) >= 0.0 ? lo : hi) = mid;
  }
  return hi;
}

double LaplaceInverter::invert(const ValidatedConfig &config, double x, double xi, double t) const
{
  if (!(t > 0.0))
  {
    Fail(ErrorCode::InvalidArgument, "Laplace inversion needs t > 0");
  }
  const double growth = growth_bound(config);
  const double time_scale = config.length() / config.wave_speed();
  if ((damping / (2.0 * period_factor * t) + growth) * time_scale > 700.0)
  {
    Fail(ErrorCode::NoConvergence, "contour abscissa overflows the hyperbolic profiles");
  }
  return invert_transform([&](cplx s) { return laplace_greens(config, x, xi, s); }, t, growth,
                          time_scale);
}

double LaplaceInverter::invert_transform(const std::function<cplx(cplx)> &transform, double t,
                                         double growth, double time_scale) const
{
  if (!(t > 0.0))
  {
    Fail(ErrorCode::InvalidArgument, "Laplace inversion needs t > 0");
  }
  const double T = period_factor * t;
  const double sigma = damping / (2.0 * T) + growth;
  // Keep the spectral resolution per unit time fixed as the period grows with t.
  const int count = static_cast<int>(std::ceil(terms * std::max(1.0, t / time_scale)));
  const int coarse = static_cast<int>(0.6 * count);
  const double step = std::numbers::pi / T;

  double full = 0.5 * transform(cplx(sigma, 0.0)).real();
  double partial = full;
  for (int k = 1; k <= count; ++k)
  {
    const double term = (transform(cplx(sigma, k * step)) * std::polar(1.0, k * step * t)).real();
    full += term * std::exp(-filter_strength * std::pow(double(k) / count, filter_order));
    if (k <= coarse)
    {
      partial += term * std::exp(-filter_strength * std::pow(double(k) / coarse, filter_order));
    }
  }
  const double scale = std::exp(sigma * t) / T;
  full *= scale;
  partial *= scale;
  if (!std::isfinite(full) || std::abs(full - partial) > max_error)
  {
    Fail(ErrorCode::NoConvergence, "Laplace inversion series did not settle");
  }
  return full;
}

}  // namespace dalembert
