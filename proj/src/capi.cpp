#include "dalembert/dalembert.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>

#include "dalembert_engine.hpp"
#include "errors.hpp"
#include "oracles/fem.hpp"
#include "oracles/laplace.hpp"
#include "response.hpp"

using namespace dalembert;

struct dal_bar
{
  ValidatedConfig config;
};

struct dal_greens
{
  GammaEvaluator evaluator;
};

struct dal_response
{
  ResponseSolver solver;
};

namespace
{

thread_local std::string last_error;

dal_status ToStatus(ErrorCode code)
{
  switch (code)
  {
  case ErrorCode::InvalidArgument: return DAL_INVALID_ARGUMENT;
  case ErrorCode::CriticalParameter: return DAL_CRITICAL_PARAMETER;
  case ErrorCode::BadGeometry: return DAL_BAD_GEOMETRY;
  case ErrorCode::RegionMismatch: return DAL_REGION_MISMATCH;
  case ErrorCode::PositiveExponent: return DAL_POSITIVE_EXPONENT;
  case ErrorCode::WavefrontSample: return DAL_WAVEFRONT_SAMPLE;
  case ErrorCode::WavefrontProximity: return DAL_WAVEFRONT_PROXIMITY;
  case ErrorCode::QuadratureFailure: return DAL_QUADRATURE_FAILURE;
  case ErrorCode::NoConvergence: return DAL_NO_CONVERGENCE;
  case ErrorCode::Unstable: return DAL_UNSTABLE;
  case ErrorCode::OutOfHorizon: return DAL_OUT_OF_HORIZON;
  }
  return DAL_INTERNAL_ERROR;
}

dal_status Report(dal_status status, const std::string &message)
{
  last_error = message;
  return status;
}

// Runs body and translates exceptions into status codes.
template <class Body>
dal_status Guard(Body &&body)
{
  try
  {
    last_error.clear();
    return body();
  }
  catch (const Error &e)
  {
    return Report(ToStatus(e.code()), e.what());
  }
  catch (const std::bad_alloc &)
  {
    return Report(DAL_INTERNAL_ERROR, "out of memory");
  }
  catch (const std::exception &e)
  {
    return Report(DAL_INTERNAL_ERROR, e.what());
  }
  catch (...)
  {
    return Report(DAL_INTERNAL_ERROR, "unknown failure");
  }
}

#define DAL_REQUIRE(cond, what)                     \
  do                                                \
  {                                                 \
    if (!(cond))                                    \
    {                                               \
      return Report(DAL_INVALID_ARGUMENT, (what));  \
    }                                               \
  } while (0)

InitialData ToInitial(const dal_problem &p)
{
  InitialData init;
  if (p.u0)
  {
    init.u0 = [fn = p.u0, user = p.u0_user](double x) { return fn(x, user); };
  }
  if (p.v0)
  {
    init.v0 = [fn = p.v0, user = p.v0_user](double x) { return fn(x, user); };
  }
  return init;
}

Forcing ToForcing(const dal_problem &p)
{
  switch (p.forcing)
  {
  case DAL_FORCING_NONE: return std::monostate{};
  case DAL_FORCING_POINT_HARMONIC:
    return PointHarmonic{p.force_position, p.force_amplitude, p.force_omega};
  case DAL_FORCING_FIELD:
    if (!p.field)
    {
      Fail(ErrorCode::InvalidArgument, "field forcing without a callback");
    }
    return SmoothField{[fn = p.field, user = p.field_user](double x, double t) {
      return fn(x, t, user);
    }};
  }
  Fail(ErrorCode::InvalidArgument, "unknown forcing kind");
}

Grid ToGrid(const dal_grid &g)
{
  return Grid{g.nx, g.nt, g.t_max};
}

}  // namespace

extern "C" {

const char *dal_version(void)
{
  return "0.3.0";
}

const char *dal_status_name(dal_status status)
{
  switch (status)
  {
  case DAL_OK: return "ok";
  case DAL_INVALID_ARGUMENT: return "invalid argument";
  case DAL_CRITICAL_PARAMETER: return "critical parameter";
  case DAL_BAD_GEOMETRY: return "bad geometry";
  case DAL_REGION_MISMATCH: return "region mismatch";
  case DAL_POSITIVE_EXPONENT: return "positive exponent";
  case DAL_WAVEFRONT_SAMPLE: return "wavefront sample";
  case DAL_WAVEFRONT_PROXIMITY: return "wavefront proximity";
  case DAL_QUADRATURE_FAILURE: return "quadrature failure";
  case DAL_NO_CONVERGENCE: return "no convergence";
  case DAL_UNSTABLE: return "unstable";
  case DAL_OUT_OF_HORIZON: return "out of horizon";
  case DAL_BUFFER_TOO_SMALL: return "buffer too small";
  case DAL_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char *dal_last_error_message(void)
{
  return last_error.c_str();
}

dal_status dal_bar_create(const dal_bar_params *params, dal_bar **out)
{
  DAL_REQUIRE(params && out, "null argument");
  *out = nullptr;
  return Guard([&] {
    BarConfig cfg;
    cfg.length = params->length;
    cfg.wave_speed = params->wave_speed;
    if (params->has_damper_position)
    {
      cfg.damper_position = params->damper_position;
    }
    cfg.h1 = params->h1;
    cfg.h2 = params->h2;
    cfg.h3 = params->h3;
    cfg.rho_a = params->rho_a == 0.0 ? 1.0 : params->rho_a;
    *out = new dal_bar{validate(cfg)};
    return DAL_OK;
  });
}

void dal_bar_destroy(dal_bar *bar)
{
  delete bar;
}

double dal_reflection_coefficient(double h)
{
  return reflection_coefficient(h);
}

dal_status dal_bar_denominator(const dal_bar *bar, double *b, double *alpha, size_t capacity,
                               size_t *count)
{
  DAL_REQUIRE(bar && count, "null argument");
  DAL_REQUIRE(capacity == 0 || (b && alpha), "null output buffer");
  return Guard([&] {
    const DenominatorData den = denominator_data(bar->config);
    *count = den.size();
    if (capacity < den.size())
    {
      return Report(DAL_BUFFER_TOO_SMALL, "denominator needs " + std::to_string(den.size()) + " entries");
    }
    for (std::size_t k = 0; k < den.size(); ++k)
    {
      b[k] = den.b[k];
      alpha[k] = den.alpha[k];
    }
    return DAL_OK;
  });
}

dal_status dal_greens_create(const dal_bar *bar, double horizon, dal_engine_path path,
                             dal_greens **out)
{
  DAL_REQUIRE(bar && out, "null argument");
  *out = nullptr;
  return Guard([&] {
    EnginePath p = EnginePath::General;
    switch (path)
    {
    case DAL_PATH_GENERAL: p = EnginePath::General; break;
    case DAL_PATH_NO_INTERNAL_DAMPER: p = EnginePath::NoInternalDamper; break;
    case DAL_PATH_RIGHT_TRANSPARENT: p = EnginePath::RightTransparent; break;
    default: return Report(DAL_INVALID_ARGUMENT, "unknown engine path");
    }
    *out = new dal_greens{GammaEvaluator(bar->config, horizon, p)};
    return DAL_OK;
  });
}

void dal_greens_destroy(dal_greens *greens)
{
  delete greens;
}

dal_status dal_greens_eval(const dal_greens *greens, double x, double xi, double t, int max_order,
                           double *out)
{
  DAL_REQUIRE(greens && out, "null argument");
  return Guard([&] {
    *out = greens->evaluator.gamma(x, xi, t, max_order);
    return DAL_OK;
  });
}

dal_status dal_greens_orders(const dal_greens *greens, double t, int *orders_used, int *max_order)
{
  DAL_REQUIRE(greens, "null argument");
  DAL_REQUIRE(t >= 0.0, "negative time");
  return Guard([&] {
    const int n = greens->evaluator.max_order(t);
    if (orders_used)
    {
      *orders_used = n + 1;
    }
    if (max_order)
    {
      *max_order = n;
    }
    return DAL_OK;
  });
}

dal_status dal_greens_series_count(const dal_greens *greens, double t, size_t *count)
{
  DAL_REQUIRE(greens && count, "null argument");
  return Guard([&] {
    *count = greens->evaluator.terms_used(t);
    return DAL_OK;
  });
}

dal_status dal_greens_step_times(const dal_greens *greens, double x, double xi, double t,
                                 double *times, double *jumps, size_t capacity, size_t *count)
{
  DAL_REQUIRE(greens && count, "null argument");
  DAL_REQUIRE(capacity == 0 || (times && jumps), "null output buffer");
  return Guard([&] {
    const auto events = greens->evaluator.step_events(x, xi, t);
    *count = events.size();
    if (capacity < events.size())
    {
      return Report(DAL_BUFFER_TOO_SMALL, "step list needs " + std::to_string(events.size()) + " entries");
    }
    for (std::size_t k = 0; k < events.size(); ++k)
    {
      times[k] = events[k].time;
      jumps[k] = events[k].weight;
    }
    return DAL_OK;
  });
}

double dal_gaussian_eval(double x, void *gaussian)
{
  const auto *g = static_cast<const dal_gaussian *>(gaussian);
  const double z = (x - g->center) / g->width;
  return g->amplitude * std::exp(-z * z);
}

dal_status dal_response_create(const dal_bar *bar, const dal_problem *problem, double horizon,
                               dal_response **out)
{
  DAL_REQUIRE(bar && problem && out, "null argument");
  *out = nullptr;
  return Guard([&] {
    *out = new dal_response{
        ResponseSolver(bar->config, ToInitial(*problem), ToForcing(*problem), horizon)};
    return DAL_OK;
  });
}

void dal_response_destroy(dal_response *response)
{
  delete response;
}

dal_status dal_response_eval(const dal_response *response, double x, double t, int max_order,
                             double *u)
{
  DAL_REQUIRE(response && u, "null argument");
  return Guard([&] {
    *u = response->solver.displacement(x, t, max_order);
    return DAL_OK;
  });
}

dal_status dal_response_field(const dal_response *response, const dal_grid *grid, int max_order,
                              double *u, int *orders_used)
{
  DAL_REQUIRE(response && grid && u, "null argument");
  return Guard([&] {
    const ResponseField field = response->solver.field(ToGrid(*grid), max_order);
    std::copy(field.u.begin(), field.u.end(), u);
    if (orders_used)
    {
      std::copy(field.orders_used.begin(), field.orders_used.end(), orders_used);
    }
    return DAL_OK;
  });
}

dal_status dal_response_energy(const dal_response *response, double t, double *energy,
                               double *flux)
{
  DAL_REQUIRE(response && energy && flux, "null argument");
  return Guard([&] {
    const EnergySample sample = response->solver.energy_and_flux(t);
    *energy = sample.energy;
    *flux = sample.flux;
    return DAL_OK;
  });
}

dal_status dal_fem_solve(const dal_bar *bar, const dal_problem *problem, const dal_grid *grid,
                         int elements, double dt, double *u, double *energy)
{
  DAL_REQUIRE(bar && problem && grid && u, "null argument");
  return Guard([&] {
    const FemResult result = fem_solve(bar->config, ToInitial(*problem), ToForcing(*problem),
                                       ToGrid(*grid), FemOptions{elements, dt});
    std::copy(result.field.u.begin(), result.field.u.end(), u);
    if (energy)
    {
      std::copy(result.energy.begin(), result.energy.end(), energy);
    }
    return DAL_OK;
  });
}

dal_status dal_laplace_greens(const dal_bar *bar, double x, double xi, double t, int terms,
                              double *out)
{
  DAL_REQUIRE(bar && out, "null argument");
  DAL_REQUIRE(terms >= 0, "negative term count");
  return Guard([&] {
    LaplaceInverter inverter;
    if (terms > 0)
    {
      inverter.terms = terms;
    }
    *out = inverter.invert(bar->config, x, xi, t);
    return DAL_OK;
  });
}

}  // extern "C"
