#include "model_config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace dalembert
{

namespace
{

void RequireNonCritical(double h, const char *name)
{
  if (std::abs(1.0 + h) < kCriticalTolerance)
  {
    std::ostringstream msg;
    msg << name << " = " << h << " is critical (1 + " << name
        << " = 0): the problem is solvable only for special initial data";
    Fail(ErrorCode::CriticalParameter, msg.str());
  }
}

}  // namespace

ValidatedConfig validate(const BarConfig &config)
{
  if (!(config.length > 0.0) || !std::isfinite(config.length))
  {
    Fail(ErrorCode::BadGeometry, "bar length must be positive");
  }
  if (!(config.wave_speed > 0.0) || !std::isfinite(config.wave_speed))
  {
    Fail(ErrorCode::BadGeometry, "wave speed must be positive");
  }
  if (!(config.rho_a > 0.0) || !std::isfinite(config.rho_a))
  {
    Fail(ErrorCode::BadGeometry, "mass per unit length must be positive");
  }
  for (double h : {config.h1, config.h2, config.h3})
  {
    if (!std::isfinite(h))
    {
      Fail(ErrorCode::InvalidArgument, "damping parameters must be finite");
    }
  }
  RequireNonCritical(config.h1, "h1");
  RequireNonCritical(config.h2, "h2");
  RequireNonCritical(config.h3, "h3");

  BarConfig p = config;
  if (p.h3 != 0.0)
  {
    if (!p.damper_position)
    {
      Fail(ErrorCode::BadGeometry, "internal damper (h3 != 0) requires a position");
    }
    const double a = *p.damper_position;
    if (!(a > 0.0 && a < p.length))
    {
      std::ostringstream msg;
      msg << "damper position a = " << a << " must lie in (0, " << p.length << ")";
      Fail(ErrorCode::BadGeometry, msg.str());
    }
  }
  return ValidatedConfig(p);
}

double ValidatedConfig::front_tolerance() const
{
  return 1e-12 * std::max(1.0, params_.length);
}

double reflection_coefficient(double h)
{
  RequireNonCritical(h, "h");
  return (1.0 - h) / (1.0 + h);
}

DenominatorData denominator_data(const ValidatedConfig &config)
{
  const double h1 = config.h1();
  const double h2 = config.h2();
  const double h3 = config.h3();
  const double L = config.length();
  const double c = config.wave_speed();

  DenominatorData den;
  den.lead = 0.5 * (1.0 + h1) * (1.0 + h2) * (1.0 + h3);
  den.lead_delay = L / c;

  auto push = [&den](double b, double alpha) {
    if (std::abs(b) >= kCoefficientDropTolerance)
    {
      den.b.push_back(b);
      den.alpha.push_back(alpha);
    }
  };

  const double scale = (1.0 + h1) * (1.0 + h2) * (1.0 + h3);
  if (config.has_internal_damper())
  {
    const double a = config.damper_position();
    push((1.0 - h1) * h3 / ((1.0 + h1) * (1.0 + h3)), 2.0 * a / c);
    push((1.0 - h2) * h3 / ((1.0 + h2) * (1.0 + h3)), 2.0 * (L - a) / c);
  }
  push(-(1.0 - h1) * (1.0 - h2) * (1.0 - h3) / scale, 2.0 * L / c);

  den.alpha_min = den.alpha.empty() ? std::numeric_limits<double>::infinity()
                                    : *std::min_element(den.alpha.begin(), den.alpha.end());
  return den;
}

}  // namespace dalembert
