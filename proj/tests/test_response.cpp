#include "doctest.h"

#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"
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

Profile Pulse(double center = 0.25 * kL, double width = 0.05 * kL)
{
  return gaussian_pulse(center, width, 0.01);
}

// Composite Simpson with n panels.
template <class F>
double Simpson(F f, double lo, double hi, int n)
{
  const double h = (hi - lo) / n;
  double sum = f(lo) + f(hi);
  for (int k = 1; k < n; ++k)
  {
    sum += f(lo + k * h) * (k % 2 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("integrate_step_against examples")
{
  const GammaEvaluator ev(Bar(1.0, 1.0, 0.0), 2.0);
  const SegmentIntegral ones = [](double lo, double hi) { return hi - lo; };
  CHECK(integrate_step_against(ev, ones, 0.5, 0.2 / kC) == doctest::Approx(0.3).epsilon(1e-14));
  const SegmentIntegral zero = [](double, double) { return 0.0; };
  CHECK(integrate_step_against(ev, zero, 0.5, 0.7) == 0.0);
}

TEST_CASE("integrate_step_against: Gaussian against brute-force Simpson")
{
  const auto cfg = Bar(0.5, 0.7, 0.6);
  const GammaEvaluator ev(cfg, 4.0);
  const Profile g = Pulse(0.8, 0.2);
  const SegmentIntegral rule = composite_gauss_rule(g, kL / 64);
  for (double x : {0.2, 0.9, 1.33})
  {
    for (double t : {0.37, 1.9, 3.4})
    {
      const double exact = integrate_step_against(ev, rule, x, t);
      // Gamma is symmetric, so its jumps in xi are the fronts emitted from x.
      std::vector<double> cuts = ev.fronts_in_x(x, t);
      cuts.push_back(0.0);
      cuts.push_back(kL);
      std::sort(cuts.begin(), cuts.end());
      double brute = 0.0;
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
      {
        const double lo = cuts[k];
        const double hi = cuts[k + 1];
        if (hi - lo < 1e-12)
        {
          continue;
        }
        const double level = ev.gamma(x, 0.5 * (lo + hi), t);
        brute += level * Simpson(g, lo, hi, 2 * static_cast<int>(500000 * (hi - lo) / kL + 1));
      }
      CHECK(exact == doctest::Approx(brute).epsilon(1e-10).scale(1e-3));
    }
  }
}

TEST_CASE("solve: d'Alembert formula with transparent ends")
{
  const Profile u0 = Pulse(0.5 * kL);
  const ResponseSolver solver(Bar(1.0, 1.0, 0.0), {u0, {}}, {}, 1.0);
  for (double t : {0.0, 0.05, 0.1, 0.3, 0.55})
  {
    for (int i = 0; i <= 36; ++i)
    {
      const double x = kL * i / 36;
      const double expected = 0.5 * (u0(x - kC * t) + u0(x + kC * t));
      CHECK(std::abs(solver.displacement(x, t) - expected) <= 1e-12);
    }
  }
}

TEST_CASE("solve: constant displacement is a rest state for any dampers")
{
  const Profile u0 = [](double) { return 0.37; };
  for (auto cfg : {Bar(0.0, 0.0, 0.0), Bar(0.5, 0.7, 0.6), Bar(0.9, 0.9, 0.6), Bar(-0.4, 2.0, 0.3, 0.4),
                   Bar(0.5, 1.0, 0.7)})
  {
    const ResponseSolver solver(cfg, {u0, {}}, {}, 6.0);
    for (double t : {0.0, 0.3, 1.2, 2.5, 5.9})
    {
      for (double x : {0.0, 0.1, 0.5, 0.9, 1.3, 1.8})
      {
        CHECK(solver.displacement(x, t) == doctest::Approx(0.37).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("solve: initial condition is reproduced at t = 0")
{
  const Profile u0 = Pulse(0.8, 0.3);
  for (auto cfg : {Bar(0.5, 0.7, 0.6), Bar(0.2, 3.0, 0.0)})
  {
    const ResponseSolver solver(cfg, {u0, {}}, {}, 1.0);
    for (double x : {0.0, 0.4, 0.9, 1.2, 1.8})
    {
      CHECK(solver.displacement(x, 0.0) == doctest::Approx(u0(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("solve: initial velocity in free space")
{
  const Profile v0 = Pulse(0.9, 0.1);
  const ResponseSolver solver(Bar(1.0, 1.0, 0.0), {{}, v0}, {}, 0.5);
  for (double t : {0.1, 0.3})
  {
    for (double x : {0.5, 0.9, 1.1})
    {
      const double expected =
          composite_gauss(v0, std::max(0.0, x - kC * t), std::min(kL, x + kC * t), 0.01) / (2 * kC);
      CHECK(solver.displacement(x, t) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("solve: superposition")
{
  const auto cfg = Bar(0.5, 0.7, 0.6);
  const Profile f = Pulse(0.45, 0.09);
  const Profile g = Pulse(1.2, 0.2);
  const Profile v = Pulse(1.0, 0.15);
  const double alpha = 0.7;
  const double beta = -1.3;
  const Profile mix = [&](double x) { return alpha * f(x) + beta * g(x); };
  const ResponseSolver sf(cfg, {f, v}, {}, 5.0);
  const ResponseSolver sg(cfg, {g, {}}, {}, 5.0);
  const ResponseSolver sm(cfg, {mix, [&](double x) { return alpha * v(x); }}, {}, 5.0);
  for (double t : {0.4, 2.1, 4.7})
  {
    for (double x : {0.1, 0.9, 1.5})
    {
      const double lhs = sm.displacement(x, t);
      const double rhs = alpha * sf.displacement(x, t) + beta * sg.displacement(x, t);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("solve: transparent ends absorb everything after 2L/c")
{
  const ResponseSolver solver(Bar(1.0, 1.0, 0.0), {Pulse(0.5 * kL), {}}, {}, 4.0);
  for (double t : {2.0 * kL / kC + 0.01, 3.9})
  {
    for (double x : {0.0, 0.4, 0.9, 1.8})
    {
      CHECK(std::abs(solver.displacement(x, t)) <= 1e-10);
    }
  }
}

TEST_CASE("solve: field is continuous in x")
{
  const ResponseSolver solver(Bar(0.5, 1.0, 0.7), {Pulse(), {}}, {}, 1.5);
  const auto field = solver.field({181, 4, 1.5});
  const double dx = kL / 180;
  for (std::size_t j = 0; j < field.t.size(); ++j)
  {
    for (std::size_t i = 0; i + 1 < field.x.size(); ++i)
    {
      // |u_x| of the pulse is at most A sqrt(2/e) / width.
      CHECK(std::abs(field.at(i + 1, j) - field.at(i, j)) <= 0.01 * 0.86 / (0.05 * kL) * dx * 1.01);
    }
  }
  CHECK(field.orders_used.back() == 2);
}

TEST_CASE("solve: pulse crosses the damper with transmission 1/(1+h3)")
{
  const double h3 = 0.7;
  const ResponseSolver solver(Bar(1.0, 1.0, h3), {Pulse(), {}}, {}, 1.5);
  // The right-going half (amplitude 0.005) has passed a = 0.5 L by t = 0.6 s.
  const double t = 0.6;
  const double peak = 0.25 * kL + kC * t;
  CHECK(solver.displacement(peak, t) == doctest::Approx(0.005 / (1 + h3)).epsilon(1e-9));
}

TEST_CASE("forced_convolution")
{
  const auto free = Bar(1.0, 1.0, 0.0);
  const GammaEvaluator ev(free, 5.0);
  const PointHarmonic force{0.45, 1.0, 4.0};
  CHECK(forced_convolution(ev, force, 1.2, 0.4) == 0.0);

  // Single step of height c/2 at |x - x_F| / c.
  for (double t : {0.6, 1.7, 4.4})
  {
    const double x = 1.2;
    const double arrival = std::abs(x - force.position) / kC;
    const double closed = force.amplitude / (2 * kC) * std::sin(force.omega * (t - arrival)) / force.omega;
    auto integrand = [&](double tau) { return ev.gamma(x, force.position, t - tau) * std::cos(4.0 * tau); };
    const double numeric = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                               integrand, 0.0, t - arrival, 10, 1e-13) / (kC * kC);
    CHECK(forced_convolution(ev, force, x, t) == doctest::Approx(closed).epsilon(1e-12));
    CHECK(numeric == doctest::Approx(closed).epsilon(1e-10));
  }
}

TEST_CASE("forced_convolution against time quadrature on a damped bar")
{
  const GammaEvaluator ev(Bar(0.9, 0.9, 0.6), 6.0);
  const PointHarmonic force{0.45, 1.0, 4.0};
  const double x = 1.3;
  const double t = 5.5;
  std::vector<double> cuts{0.0, t};
  for (const auto &e : ev.step_events(x, force.position, t))
  {
    cuts.push_back(t - e.time);
  }
  std::sort(cuts.begin(), cuts.end());
  double numeric = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
  {
    if (cuts[k + 1] - cuts[k] < 1e-12)
    {
      continue;
    }
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    const double level = ev.gamma(x, force.position, t - mid);
    numeric += level * (std::sin(4.0 * cuts[k + 1]) - std::sin(4.0 * cuts[k])) / 4.0;
  }
  numeric /= kC * kC;
  CHECK(forced_convolution(ev, force, x, t) == doctest::Approx(numeric).epsilon(1e-10));
}

TEST_CASE("smooth forcing field in free space")
{
  // p = g(x) cos(omega t); u = (1 / 2c) int_0^t int_{|x - xi| <= c (t - tau)} p.
  const Profile g = Pulse(0.9, 0.2);
  const SmoothField field{[&](double xi, double tau) { return g(xi) * std::cos(3.0 * tau); }};
  const ResponseSolver solver(Bar(1.0, 1.0, 0.0), {}, field, 0.5);
  const double x = 0.8;
  const double t = 0.4;
  auto inner = [&](double tau) {
    const double r = kC * (t - tau);
    return composite_gauss(g, x - r, x + r, 0.01) * std::cos(3.0 * tau);
  };
  const double expected =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(inner, 0.0, t, 10, 1e-13) /
      (2 * kC);
  CHECK(solver.displacement(x, t) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("point force must be inside the bar")
{
  CHECK_THROWS_AS(ResponseSolver(Bar(0.5, 0.5, 0.0), {}, PointHarmonic{0.0, 1.0, 1.0}, 1.0), Error);
}

TEST_CASE("energy: conservative bar")
{
  const ResponseSolver solver(Bar(0.0, 0.0, 0.0), {Pulse(0.5 * kL, 0.1 * kL), {}}, {}, 3.0);
  const double e0 = solver.energy_and_flux(0.05).energy;
  CHECK(e0 > 0.0);
  for (double t : {0.31, 0.77, 1.43, 2.11, 2.9})
  {
    const auto sample = solver.energy_and_flux(t);
    CHECK(sample.flux == 0.0);
    CHECK(std::abs(sample.energy - e0) <= 1e-6 * e0);
  }
}

TEST_CASE("energy: flux matches the energy rate")
{
  const ResponseSolver solver(Bar(0.5, 0.7, 0.6), {Pulse(0.3 * kL, 0.08 * kL), {}}, {}, 3.0);
  const double h = 1e-3;
  for (double t : {0.45, 0.9, 1.37, 2.3})
  {
    const double rate =
        (solver.energy_and_flux(t + h).energy - solver.energy_and_flux(t - h).energy) / (2 * h);
    const double flux = solver.energy_and_flux(t).flux;
    CHECK(flux < 0.0);
    CHECK(rate == doctest::Approx(flux).epsilon(1e-3));
  }
}

TEST_CASE("energy: negative end damper pumps energy in")
{
  const ResponseSolver solver(Bar(-0.5, 0.0, 0.0), {Pulse(0.3 * kL, 0.08 * kL), {}}, {}, 1.0);
  // Rising flank of the left-going half at x = 0; its peak arrives at 0.36 s.
  const auto sample = solver.energy_and_flux(0.3);
  CHECK(sample.flux > 1e-3 * sample.energy);
}

TEST_CASE("energy: fronts near the stencil are rejected")
{
  const ResponseSolver solver(Bar(0.5, 0.7, 0.6), {Pulse(), {}}, {}, 3.0);
  // Gamma(0, a, .) jumps at a / c = 0.6 s.
  try
  {
    solver.energy_and_flux(0.6);
    FAIL("expected WavefrontProximity");
  }
  catch (const Error &e)
  {
    CHECK(e.code() == ErrorCode::WavefrontProximity);
  }
  const ResponseSolver forced(Bar(0.5, 0.7, 0.6), {}, PointHarmonic{0.45, 1.0, 4.0}, 3.0);
  CHECK_THROWS_AS(forced.energy_and_flux(1.0), Error);
}
