#ifndef DALEMBERT_RESPONSE_HPP
#define DALEMBERT_RESPONSE_HPP

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "dalembert_engine.hpp"
#include "quadrature.hpp"

namespace dalembert
{

// Initial displacement and velocity on [0, L]. An empty v0 means v0 = 0. u0 must
// be continuous.
struct InitialData
{
  Profile u0;
  Profile v0;
};

// u0(x) = amplitude * exp(-((x - center) / width)^2).
Profile gaussian_pulse(double center, double width, double amplitude);

// p = (F0 / rhoA) cos(omega t) delta(x - position).
struct PointHarmonic
{
  double position = 0.0;   // x_F [m]
  double amplitude = 0.0;  // F0 [N]
  double omega = 0.0;      // [rad/s]
};

// Force per unit mass p(x, t).
struct SmoothField
{
  std::function<double(double x, double t)> p;
};

using Forcing = std::variant<std::monostate, PointHarmonic, SmoothField>;

// Uniform sample grid: x_i = L i / (nx - 1), t_j = t_max j / (nt - 1).
struct Grid
{
  int nx = 2;
  int nt = 2;
  double t_max = 0.0;
};

struct ResponseField
{
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> u;        // u[j * x.size() + i] = u(x_i, t_j)
  std::vector<int> orders_used;  // per time sample
  BarConfig config;

  double at(std::size_t i, std::size_t j) const { return u[j * x.size() + i]; }
};

struct EnergySample
{
  double energy = 0.0;  // Xi [J]
  double flux = 0.0;    // dXi/dt predicted by the boundary and damper terms [W]
};

// Sum over every series term and step of weight * coef * int g over the part of
// [0, L] where the step is on, for Gamma(x, ., t). `integral` returns int_lo^hi g.
double integrate_step_against(const GammaEvaluator &ev, const SegmentIntegral &integral, double x,
                              double t, int max_order = kAllOrders);

// (F0 / (rhoA c^2)) int_0^t Gamma(x, x_F, t - tau) cos(omega tau) dtau, exactly.
double forced_convolution(const GammaEvaluator &ev, const PointHarmonic &f, double x, double t,
                          int max_order = kAllOrders);

//
// Full solution u(x, t) of the initial value problem with forcing, assembled from
// the Green's function. Immutable after construction.
//
class ResponseSolver
{
public:
  ResponseSolver(const ValidatedConfig &config, InitialData init, Forcing forcing, double horizon,
                 EnginePath path = EnginePath::General);

  const GammaEvaluator &evaluator() const { return ev_; }
  const ValidatedConfig &config() const { return ev_.config(); }
  double horizon() const { return horizon_; }

  double displacement(double x, double t, int max_order = kAllOrders) const;

  ResponseField field(const Grid &grid, int max_order = kAllOrders) const;

  // Energy and predicted flux for the unforced problem, from 5-point finite
  // differences on wavefront-aware panels. Throws Error(WavefrontProximity) when
  // a front sits inside the time stencil at 0, L or a.
  EnergySample energy_and_flux(double t) const;

  // Finite-difference steps used by energy_and_flux.
  double dx() const { return 1e-3 * config().length(); }
  double dt() const { return 1e-3 * config().length() / config().wave_speed(); }

private:
  double forcing_term(double x, double t, int max_order) const;
  double velocity(double x, double t) const;
  double slope(double x, double t, double lo, double hi) const;

  double horizon_;
  GammaEvaluator ev_;
  InitialData init_;
  Forcing forcing_;
  std::optional<PrimitiveTable> v0_table_;
};

ResponseField solve(const ValidatedConfig &config, const InitialData &init, const Forcing &forcing,
                    const Grid &grid);

}  // namespace dalembert

#endif  // DALEMBERT_RESPONSE_HPP
