#include "response.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"

namespace dalembert
{

namespace
{

constexpr std::size_t kForcingBudget = 1000000;

// 5-point stencils: central, forward and backward first derivative.
double Central(double m2, double m1, double p1, double p2, double h)
{
  return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
}

double Forward(const double f[5], double h)
{
  return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
}

void SortUnique(std::vector<double> &v, double tol)
{
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end(), [tol](double l, double r) { return r - l <= tol; }),
          v.end());
}

}  // namespace

Profile gaussian_pulse(double center, double width, double amplitude)
{
  return [=](double x) {
    const double z = (x - center) / width;
    return amplitude * std::exp(-z * z);
  };
}

double integrate_step_against(const GammaEvaluator &ev, const SegmentIntegral &integral, double x,
                              double t, int max_order)
{
  if (t < 0.0)
  {
    return 0.0;
  }
  ev.check_horizon(t);
  const ValidatedConfig &config = ev.config();
  const double c = config.wave_speed();
  const double tol_t = ev.time_tolerance();
  double sum = 0.0;
  ev.for_each_xi_interval(x, [&](double lo, double hi, const StepSum &th) {
    for (const SeriesTerm &term : ev.series())
    {
      if (max_order >= 0 && term.order > max_order)
      {
        break;
      }
      if (term.delay > t + tol_t)
      {
        continue;
      }
      const double ct = c * (t - term.delay);
      for (const StepTerm &step : th.terms)
      {
        double l = lo;
        double r = hi;
        const double root = ct - step.arg.k0 - step.arg.kx * x;
        if (step.arg.kxi == 0)
        {
          if (root < 0.0)
          {
            continue;
          }
        }
        else if (step.arg.kxi > 0)
        {
          r = std::min(r, root);
        }
        else
        {
          l = std::max(l, -root);
        }
        if (r > l)
        {
          sum += term.weight * step.coef * integral(l, r);
        }
      }
    }
  });
  return sum;
}

double forced_convolution(const GammaEvaluator &ev, const PointHarmonic &f, double x, double t,
                          int max_order)
{
  const ValidatedConfig &config = ev.config();
  const double c = config.wave_speed();
  double sum = 0.0;
  for (const StepEvent &event : ev.step_events(x, f.position, t, max_order))
  {
    const double span = std::max(0.0, t - event.time);
    sum += event.weight * (f.omega == 0.0 ? span : std::sin(f.omega * span) / f.omega);
  }
  return f.amplitude / (config.rho_a() * c * c) * sum;
}

ResponseSolver::ResponseSolver(const ValidatedConfig &config, InitialData init, Forcing forcing,
                               double horizon, EnginePath path)
    : horizon_(horizon),
      ev_(config, horizon + 4e-3 * config.length() / config.wave_speed(), path),
      init_(std::move(init)),
      forcing_(std::move(forcing))
{
  if (!init_.u0)
  {
    init_.u0 = [](double) { return 0.0; };
  }
  if (init_.v0)
  {
    v0_table_.emplace(init_.v0, 0.0, config.length(), 1024);
  }
  if (const auto *point = std::get_if<PointHarmonic>(&forcing_))
  {
    if (!(point->position > 0.0 && point->position < config.length()))
    {
      Fail(ErrorCode::InvalidArgument, "point force must act strictly inside the bar");
    }
  }
  else if (const auto *smooth = std::get_if<SmoothField>(&forcing_))
  {
    if (!smooth->p)
    {
      Fail(ErrorCode::InvalidArgument, "empty forcing field");
    }
  }
}

double ResponseSolver::forcing_term(double x, double t, int max_order) const
{
  if (const auto *point = std::get_if<PointHarmonic>(&forcing_))
  {
    return forced_convolution(ev_, *point, x, t, max_order);
  }
  const auto *smooth = std::get_if<SmoothField>(&forcing_);
  if (!smooth || t <= 0.0)
  {
    return 0.0;
  }
  const ValidatedConfig &config = ev_.config();
  const double L = config.length();
  const double c = config.wave_speed();

  // The inner xi-integral is smooth in tau except where a front crosses one of
  // the interval ends 0, x, a, L.
  std::vector<double> cuts{0.0, t};
  std::vector<double> ends{0.0, x, L};
  if (config.has_internal_damper())
  {
    ends.push_back(config.damper_position());
  }
  for (double end : ends)
  {
    for (const StepEvent &event : ev_.step_events(x, end, t, max_order))
    {
      cuts.push_back(std::clamp(t - event.time, 0.0, t));
    }
  }
  SortUnique(cuts, ev_.time_tolerance());

  std::size_t evaluations = 0;
  auto inner = [&](double tau) {
    if (++evaluations > kForcingBudget)
    {
      Fail(ErrorCode::QuadratureFailure, "forcing quadrature exceeded its evaluation budget");
    }
    const SegmentIntegral rule = composite_gauss_rule(
        [&](double xi) { return smooth->p(xi, tau); }, L / 16.0);
    return integrate_step_against(ev_, rule, x, t - tau, max_order);
  };
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
  {
    double error = 0.0;
    double l1 = 0.0;
    const double part = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        inner, cuts[k], cuts[k + 1], 12, 1e-11, &error, &l1);
    if (!std::isfinite(part) || error > 1e-8 * std::max(1.0, l1))
    {
      Fail(ErrorCode::QuadratureFailure, "forcing quadrature did not converge");
    }
    sum += part;
  }
  return sum / (c * c);
}

double ResponseSolver::displacement(double x, double t, int max_order) const
{
  const ValidatedConfig &config = ev_.config();
  const double L = config.length();
  if (!(x >= 0.0 && x <= L))
  {
    Fail(ErrorCode::InvalidArgument, "point outside the bar");
  }
  if (t < 0.0)
  {
    Fail(ErrorCode::InvalidArgument, "negative time");
  }
  const double c = config.wave_speed();
  const Profile &u0 = init_.u0;

  double boundary = config.h1() * u0(0.0) * ev_.gamma(x, 0.0, t, max_order) +
                    config.h2() * u0(L) * ev_.gamma(x, L, t, max_order);
  if (config.has_internal_damper())
  {
    const double a = config.damper_position();
    boundary += 2.0 * config.h3() * u0(a) * ev_.gamma(x, a, t, max_order);
  }

  double samples = 0.0;
  for (const SourcePoint &p : ev_.gamma_t_classical(x, t, FrontPolicy::RightLimit, max_order))
  {
    samples += p.weight * u0(p.position);
  }

  double velocity = 0.0;
  if (v0_table_)
  {
    const PrimitiveTable &table = *v0_table_;
    velocity = integrate_step_against(
        ev_, [&table](double lo, double hi) { return table(lo, hi); }, x, t, max_order);
  }

  return boundary / c + (samples + velocity) / (c * c) + forcing_term(x, t, max_order);
}

ResponseField ResponseSolver::field(const Grid &grid, int max_order) const
{
  if (grid.nx < 2 || grid.nt < 1 || !(grid.t_max >= 0.0) || grid.t_max > horizon_)
  {
    Fail(ErrorCode::InvalidArgument, "bad response grid");
  }
  ResponseField out;
  out.config = config().params();
  const double L = config().length();
  for (int i = 0; i < grid.nx; ++i)
  {
    out.x.push_back(i + 1 == grid.nx ? L : L * i / (grid.nx - 1));
  }
  for (int j = 0; j < grid.nt; ++j)
  {
    out.t.push_back(grid.nt == 1 ? grid.t_max
                                 : (j + 1 == grid.nt ? grid.t_max : grid.t_max * j / (grid.nt - 1)));
  }
  out.u.reserve(out.x.size() * out.t.size());
  for (double t : out.t)
  {
    const int used = ev_.orders_used(t);
    out.orders_used.push_back(max_order >= 0 ? std::min(used, max_order + 1) : used);
    for (double x : out.x)
    {
      out.u.push_back(displacement(x, t, max_order));
    }
  }
  return out;
}

double ResponseSolver::velocity(double x, double t) const
{
  const double h = dt();
  return Central(displacement(x, t - 2 * h), displacement(x, t - h), displacement(x, t + h),
                 displacement(x, t + 2 * h), h);
}

double ResponseSolver::slope(double x, double t, double lo, double hi) const
{
  const double h = dx();
  if (x - 2 * h >= lo && x + 2 * h <= hi)
  {
    return Central(displacement(x - 2 * h, t), displacement(x - h, t), displacement(x + h, t),
                   displacement(x + 2 * h, t), h);
  }
  double f[5];
  if (x - 2 * h < lo)
  {
    for (int k = 0; k < 5; ++k)
    {
      f[k] = displacement(std::min(x + k * h, config().length()), t);
    }
    return Forward(f, h);
  }
  for (int k = 0; k < 5; ++k)
  {
    f[k] = displacement(std::max(x - k * h, 0.0), t);
  }
  return -Forward(f, h);
}

EnergySample ResponseSolver::energy_and_flux(double t) const
{
  if (!std::holds_alternative<std::monostate>(forcing_))
  {
    Fail(ErrorCode::InvalidArgument, "energy audit requires an unforced problem");
  }
  if (t > horizon_)
  {
    Fail(ErrorCode::OutOfHorizon, "energy requested beyond the solver horizon");
  }
  const ValidatedConfig &config = ev_.config();
  const double L = config.length();
  const double c = config.wave_speed();
  const double h = dt();

  std::vector<double> marks{0.0, L};
  if (config.has_internal_damper())
  {
    marks.push_back(config.damper_position());
  }
  if (t < 2.0 * h)
  {
    Fail(ErrorCode::WavefrontProximity, "time stencil reaches t = 0");
  }
  for (double x0 : marks)
  {
    for (double xb : marks)
    {
      for (const StepEvent &event : ev_.step_events(x0, xb, t + 2.0 * h))
      {
        if (std::abs(event.time - t) <= 2.0 * h)
        {
          Fail(ErrorCode::WavefrontProximity, "a wavefront lies inside the time stencil");
        }
      }
    }
  }

  // Panels break at the damper and wherever a front launched from 0, a or L sits.
  std::vector<double> breaks = marks;
  for (double xb : marks)
  {
    for (double front : ev_.fronts_in_x(xb, t))
    {
      breaks.push_back(front);
    }
  }
  SortUnique(breaks, config.front_tolerance());

  const auto &nodes = gauss_nodes();
  const auto &weights = gauss_weights();
  const double max_panel = L / 128.0;
  double kinetic = 0.0;
  double strain = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
  {
    const double lo = breaks[k];
    const double hi = breaks[k + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_panel)));
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p)
    {
      const double mid = lo + (p + 0.5) * width;
      for (std::size_t i = 0; i < nodes.size(); ++i)
      {
        const double x = mid + 0.5 * width * nodes[i];
        const double w = 0.5 * width * weights[i];
        const double ut = velocity(x, t);
        const double ux = slope(x, t, lo, hi);
        kinetic += w * ut * ut;
        strain += w * ux * ux;
      }
    }
  }
  const double rho_a = config.rho_a();
  const double ea = config.axial_stiffness();
  EnergySample out;
  out.energy = 0.5 * rho_a * kinetic + 0.5 * ea * strain;

  const double u0 = velocity(0.0, t);
  const double uL = velocity(L, t);
  double sink = config.h1() * u0 * u0 + config.h2() * uL * uL;
  if (config.has_internal_damper())
  {
    const double ua = velocity(config.damper_position(), t);
    sink += 2.0 * config.h3() * ua * ua;
  }
  out.flux = -ea / c * sink;
  return out;
}

ResponseField solve(const ValidatedConfig &config, const InitialData &init, const Forcing &forcing,
                    const Grid &grid)
{
  return ResponseSolver(config, init, forcing, grid.t_max).field(grid);
}

}  // namespace dalembert
