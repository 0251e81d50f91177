#include "doctest.h"

#include <cmath>
#include <random>

#include "errors.hpp"
#include "oracles/fem.hpp"
#include "oracles/laplace.hpp"
#include "quadrature.hpp"
#include "response.hpp"

using namespace dalembert;

namespace
{

constexpr double kL = 1.8;
constexpr double kC = 1.5;

ValidatedConfig Bar(double h1, double h2, double h3, double a = 0.9)
{
  BarConfig cfg;
  cfg.length = kL;
  cfg.wave_speed = kC;
  cfg.h1 = h1;
  cfg.h2 = h2;
  cfg.h3 = h3;
  if (h3 != 0.0)
  {
    cfg.damper_position = a;
  }
  return validate(cfg);
}

double MaxDiff(const ResponseField &a, const ResponseField &b)
{
  double worst = 0.0;
  for (std::size_t k = 0; k < a.u.size(); ++k)
  {
    worst = std::max(worst, std::abs(a.u[k] - b.u[k]));
  }
  return worst;
}

ErrorCode CodeOf(const std::function<void()> &run)
{
  try
  {
    run();
  }
  catch (const Error &e)
  {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("laplace_greens matches the free-space transform")
{
  const auto free = Bar(1.0, 1.0, 0.0);
  const std::complex<double> s(2.0, 3.0);
  const auto expected = 0.5 * kC / s * std::exp(-s * 0.4 / kC);
  CHECK(std::abs(laplace_greens(free, 0.5, 0.9, s) - expected) <= 1e-14);
}

TEST_CASE("growth_bound")
{
  CHECK(growth_bound(Bar(0.5, 0.7, 0.6)) == 0.0);
  const auto active = Bar(-0.5, 0.0, 0.0);
  // R1 = 3, R2 = 1: zeros at Re s = ln 3 / (2L/c).
  CHECK(growth_bound(active) == doctest::Approx(std::log(3.0) / 2.4).epsilon(1e-10));
}

TEST_CASE("laplace inversion: free space")
{
  const auto free = Bar(1.0, 1.0, 0.0);
  CHECK(laplace_invert_G(free, 0.5, 0.9, 1.0) == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(std::abs(laplace_invert_G(free, 0.5, 1.3, 0.3)) <= 1e-7);
}

TEST_CASE("laplace inversion: causality")
{
  const auto cfg = Bar(0.5, 0.7, 0.6);
  for (double t : {0.05, 0.2, 0.4})
  {
    CHECK(std::abs(laplace_invert_G(cfg, 0.1, 0.9, t)) <= 1e-7);
  }
}

TEST_CASE("laplace inversion matches the engine at random off-front points")
{
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto cfg = Bar(0.3, 1.7, 0.45, 1.1);
  const GammaEvaluator ev(cfg, 6.0);
  int checked = 0;
  while (checked < 20)
  {
    const double x = kL * unit(rng);
    const double xi = kL * unit(rng);
    const double t = 0.05 + 5.9 * unit(rng);
    bool near = false;
    for (const auto &e : ev.step_events(x, xi, std::min(6.0, t + 0.1)))
    {
      near = near || std::abs(e.time - t) <= 0.01 * kL / kC;
    }
    if (near)
    {
      continue;
    }
    ++checked;
    CHECK(std::abs(laplace_invert_G(cfg, x, xi, t) - ev.gamma(x, xi, t)) <= 1e-6);
  }
}

TEST_CASE("laplace inversion: invalid time and unsettled series")
{
  const auto cfg = Bar(0.5, 0.7, 0.6);
  CHECK(CodeOf([&] { laplace_invert_G(cfg, 0.3, 0.6, 0.0); }) == ErrorCode::InvalidArgument);
  // Right on a front the series rings.
  LaplaceInverter coarse;
  coarse.terms = 200;
  CHECK(CodeOf([&] { coarse.invert(cfg, 0.3, 0.6, 0.2); }) == ErrorCode::NoConvergence);
}

TEST_CASE("fem: rigid body mode")
{
  const InitialData rest{[](double) { return 0.25; }, {}};
  const auto result = fem_solve(Bar(0.0, 0.0, 0.0), rest, {}, {19, 9, 2.0}, {40, 0.0});
  for (double u : result.field.u)
  {
    CHECK(u == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("fem: conservative energy drift")
{
  const InitialData init{gaussian_pulse(0.5 * kL, 0.1, 1.0), {}};
  const auto result = fem_solve(Bar(0.0, 0.0, 0.0), init, {}, {11, 21, 2.0 * kL / kC}, {200, 0.0});
  const double e0 = result.energy.front();
  for (double e : result.energy)
  {
    CHECK(std::abs(e - e0) <= 1e-6 * e0);
  }
}

TEST_CASE("fem: transparent right end, pulse across the damper")
{
  const auto cfg = Bar(0.5, 1.0, 0.7);
  const InitialData init{gaussian_pulse(0.25 * kL, 0.1, 1.0), {}};
  const Grid grid{64, 64, 1.5};
  const auto exact = solve(cfg, init, {}, grid);
  const double e200 = MaxDiff(exact, fem_solve(cfg, init, {}, grid, {200, 0.0}).field);
  const double e400 = MaxDiff(exact, fem_solve(cfg, init, {}, grid, {400, 0.0}).field);
  CHECK(e200 <= 5e-3);
  CHECK(e200 >= 3.0 * e400);
}

TEST_CASE("fem: point harmonic force on a damped bar")
{
  const auto cfg = Bar(0.9, 0.9, 0.6);
  const PointHarmonic force{0.25 * kL, 1.0, 4.0};
  const Grid grid{19, 21, 4.0};
  const auto exact = solve(cfg, {}, force, grid);
  CHECK(MaxDiff(exact, fem_solve(cfg, {}, force, grid, {200, 0.0}).field) <= 5e-3);
}

TEST_CASE("fem: invalid inputs")
{
  const auto cfg = Bar(0.5, 1.0, 0.7);
  const InitialData init{gaussian_pulse(0.45, 0.1, 1.0), {}};
  CHECK(CodeOf([&] { fem_solve(cfg, init, {}, {5, 5, 1.0}, {200, 0.01}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(CodeOf([&] { fem_solve(cfg, init, {}, {5, 5, 1.0}, {7, 0.0}); }) == ErrorCode::BadGeometry);
  CHECK(CodeOf([&] { fem_solve(cfg, init, {}, {5, 5, 1.0}, {0, 0.0}); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("the two oracles agree with each other")
{
  // u0 = 0 and a smooth v0: U(x, s) = (1 / c^2) int G(x, xi, s) v0(xi) dxi.
  const auto cfg = Bar(0.5, 0.7, 0.6);
  const Profile v0 = gaussian_pulse(0.6, 0.15, 1.0);
  const Grid grid{7, 5, 3.0};
  const auto fem = fem_solve(cfg, {{}, v0}, {}, grid, {400, 0.0});
  LaplaceInverter inverter;
  inverter.terms = 400;
  for (int j = 1; j < grid.nt; ++j)
  {
    for (int i = 0; i < grid.nx; ++i)
    {
      const double x = fem.field.x[i];
      const double t = fem.field.t[j];
      // G is smooth in xi apart from kinks at x and a.
      std::vector<double> breaks{0.0, std::min(x, 0.9), std::max(x, 0.9), kL};
      std::vector<double> nodes;
      std::vector<double> weights;
      for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
      {
        const int panels = static_cast<int>(std::ceil((breaks[k + 1] - breaks[k]) / (kL / 32)));
        const double width = (breaks[k + 1] - breaks[k]) / std::max(panels, 1);
        for (int p = 0; p < panels; ++p)
        {
          for (std::size_t q = 0; q < gauss_nodes().size(); ++q)
          {
            const double xi = breaks[k] + width * (p + 0.5 * (1.0 + gauss_nodes()[q]));
            nodes.push_back(xi);
            weights.push_back(0.5 * width * gauss_weights()[q] * v0(xi) / (kC * kC));
          }
        }
      }
      auto transform = [&](std::complex<double> s) {
        std::complex<double> sum = 0.0;
        for (std::size_t q = 0; q < nodes.size(); ++q)
        {
          sum += weights[q] * laplace_greens(cfg, x, nodes[q], s);
        }
        return sum;
      };
      const double u = inverter.invert_transform(transform, t, 0.0, kL / kC);
      CHECK(std::abs(u - fem.field.at(i, j)) <= 2e-3);
    }
  }
}
