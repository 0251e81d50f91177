#include "dalembert_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "errors.hpp"

namespace dalembert
{

namespace
{

// n! / prod n_k! times prod b_k^{n_k} with the sign (-1)^n.
double MultinomialWeight(const std::vector<int> &counts, const std::vector<double> &b)
{
  int n = 0;
  for (int k : counts)
  {
    n += k;
  }
  if (n <= 20)
  {
    // Exact: product of binomials, every partial result is an integer.
    std::uint64_t multinomial = 1;
    int running = 0;
    for (int k : counts)
    {
      for (int j = 1; j <= k; ++j)
      {
        ++running;
        multinomial = multinomial * running / j;
      }
    }
    double weight = static_cast<double>(multinomial);
    for (std::size_t k = 0; k < counts.size(); ++k)
    {
      weight *= std::pow(b[k], counts[k]);
    }
    return n % 2 == 0 ? weight : -weight;
  }
  double log_weight = std::lgamma(n + 1.0);
  bool negative = n % 2 != 0;
  for (std::size_t k = 0; k < counts.size(); ++k)
  {
    if (counts[k] == 0)
    {
      continue;
    }
    log_weight += counts[k] * std::log(std::abs(b[k])) - std::lgamma(counts[k] + 1.0);
    if (b[k] < 0.0 && counts[k] % 2 != 0)
    {
      negative = !negative;
    }
  }
  const double weight = std::exp(log_weight);
  return negative ? -weight : weight;
}

// Compositions of n into counts.size() parts, leading parts largest first.
template <class Visit>
void Compositions(std::vector<int> &counts, std::size_t slot, int remaining, Visit &visit)
{
  if (slot + 1 == counts.size())
  {
    counts[slot] = remaining;
    visit(counts);
    return;
  }
  for (int k = remaining; k >= 0; --k)
  {
    counts[slot] = k;
    Compositions(counts, slot + 1, remaining - k, visit);
  }
}

AffineExponent Distance(Ordering ordering)
{
  // |x - xi|
  return ordering == Ordering::XBelowXi ? AffineExponent{0.0, -1, 1} : AffineExponent{0.0, 1, -1};
}

AffineExponent Plus(double k0, AffineExponent e)
{
  e.k0 += k0;
  return e;
}

AffineExponent Minus(double k0, AffineExponent e)
{
  return {k0 - e.k0, -e.kx, -e.kxi};
}

constexpr AffineExponent kSum{0.0, 1, 1};  // x + xi

// Adds coef * H(ct - arg), merging with an existing step of equal argument.
void AddStep(StepSum &sum, double coef, AffineExponent arg)
{
  if (coef == 0.0)
  {
    return;
  }
  for (auto &term : sum.terms)
  {
    if (term.arg.kx == arg.kx && term.arg.kxi == arg.kxi && std::abs(term.arg.k0 - arg.k0) < 1e-12)
    {
      term.coef += coef;
      return;
    }
  }
  sum.terms.push_back({coef, arg});
}

void DropCancelled(StepSum &sum)
{
  std::erase_if(sum.terms, [](const StepTerm &t) { return std::abs(t.coef) < 1e-15; });
}

std::size_t ThetaIndex(const ValidatedConfig &config, Region region)
{
  const std::size_t ordering = region.ordering == Ordering::XBelowXi ? 0 : 1;
  if (!config.has_internal_damper())
  {
    return ordering;
  }
  std::size_t side = 0;
  switch (region.side)
  {
  case DamperSide::BothLeft: side = 0; break;
  case DamperSide::BothRight: side = 1; break;
  case DamperSide::Split: side = 2; break;
  case DamperSide::None: Fail(ErrorCode::RegionMismatch, "region without damper side on a damped bar");
  }
  return 3 * ordering + side;
}

}  // namespace

std::vector<SeriesTerm> enumerate_terms(const DenominatorData &den, double t)
{
  std::vector<SeriesTerm> out;
  if (den.size() == 0 || t < 0.0)
  {
    out.push_back({0, std::vector<int>(den.size(), 0), 1.0, 0.0});
    return out;
  }
  const double tol = 1e-12 * std::max(1.0, t);
  const int max_order = static_cast<int>(std::floor((t + tol) / den.alpha_min));
  std::vector<int> counts(den.size(), 0);
  for (int n = 0; n <= max_order; ++n)
  {
    auto visit = [&](const std::vector<int> &c) {
      double delay = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k)
      {
        delay += c[k] * den.alpha[k];
      }
      if (delay <= t + tol)
      {
        out.push_back({n, c, MultinomialWeight(c, den.b), delay});
      }
    };
    Compositions(counts, 0, n, visit);
  }
  return out;
}

DenominatorData denominator_no_internal_damper(const ValidatedConfig &config)
{
  if (config.has_internal_damper())
  {
    Fail(ErrorCode::InvalidArgument, "closed form requires h3 = 0");
  }
  DenominatorData den;
  den.lead = 0.5 * (1.0 + config.h1()) * (1.0 + config.h2());
  den.lead_delay = config.length() / config.wave_speed();
  const double b = -reflection_coefficient(config.h1()) * reflection_coefficient(config.h2());
  if (std::abs(b) >= kCoefficientDropTolerance)
  {
    den.b.push_back(b);
    den.alpha.push_back(2.0 * config.length() / config.wave_speed());
  }
  den.alpha_min = den.alpha.empty() ? std::numeric_limits<double>::infinity() : den.alpha[0];
  return den;
}

DenominatorData denominator_right_transparent(const ValidatedConfig &config)
{
  if (!config.has_internal_damper() || std::abs(config.h2() - 1.0) > kCriticalTolerance)
  {
    Fail(ErrorCode::InvalidArgument, "closed form requires h2 = 1 and h3 != 0");
  }
  const double h1 = config.h1();
  const double h3 = config.h3();
  DenominatorData den;
  den.lead = (1.0 + h1) * (1.0 + h3);
  den.lead_delay = config.length() / config.wave_speed();
  const double b = (1.0 - h1) * h3 / ((1.0 + h1) * (1.0 + h3));
  if (std::abs(b) >= kCoefficientDropTolerance)
  {
    den.b.push_back(b);
    den.alpha.push_back(2.0 * config.damper_position() / config.wave_speed());
  }
  den.alpha_min = den.alpha.empty() ? std::numeric_limits<double>::infinity() : den.alpha[0];
  return den;
}

std::vector<StepSum> theta_no_internal_damper(const ValidatedConfig &config)
{
  denominator_no_internal_damper(config);  // parameter check
  const double L = config.length();
  const double half_c = 0.5 * config.wave_speed();
  const double r1 = reflection_coefficient(config.h1());
  const double r2 = reflection_coefficient(config.h2());
  std::vector<StepSum> out;
  for (const Region &region : regions(config))
  {
    StepSum sum{region, {}};
    const AffineExponent d = Distance(region.ordering);
    AddStep(sum, half_c, d);
    AddStep(sum, half_c * r1, kSum);
    AddStep(sum, half_c * r2, Minus(2.0 * L, kSum));
    AddStep(sum, half_c * r1 * r2, Minus(2.0 * L, d));
    DropCancelled(sum);
    out.push_back(std::move(sum));
  }
  return out;
}

std::vector<StepSum> theta_right_transparent(const ValidatedConfig &config)
{
  denominator_right_transparent(config);
  const double a = config.damper_position();
  const double h3 = config.h3();
  const double k = config.wave_speed() / (2.0 * (1.0 + h3));
  const double r1 = reflection_coefficient(config.h1());
  std::vector<StepSum> out;
  for (const Region &region : regions(config))
  {
    StepSum sum{region, {}};
    const AffineExponent d = Distance(region.ordering);
    AddStep(sum, k, d);
    AddStep(sum, k * r1, kSum);
    if (region.side == DamperSide::BothRight)
    {
      AddStep(sum, k * h3, d);
      AddStep(sum, -k * h3, Plus(-2.0 * a, kSum));
      AddStep(sum, k * h3 * r1, Plus(2.0 * a, d));
      AddStep(sum, -k * h3 * r1, kSum);
    }
    else if (region.side == DamperSide::BothLeft)
    {
      AddStep(sum, k * h3, d);
      AddStep(sum, -k * h3, Minus(2.0 * a, kSum));
      AddStep(sum, k * h3 * r1, kSum);
      AddStep(sum, -k * h3 * r1, Minus(2.0 * a, d));
    }
    DropCancelled(sum);
    out.push_back(std::move(sum));
  }
  return out;
}

std::vector<StepSum> theta_general(const ValidatedConfig &config)
{
  std::vector<StepSum> out;
  for (const Region &region : regions(config))
  {
    out.push_back(invert_termwise(config, build_numerator(config, region)));
  }
  return out;
}

GammaEvaluator::GammaEvaluator(const ValidatedConfig &config, double horizon, EnginePath path)
    : config_(config), path_(path), horizon_(horizon)
{
  if (!std::isfinite(horizon) || horizon < 0.0)
  {
    Fail(ErrorCode::InvalidArgument, "horizon must be finite and non-negative");
  }
  switch (path)
  {
  case EnginePath::General:
    den_ = denominator_data(config);
    thetas_ = theta_general(config);
    break;
  case EnginePath::NoInternalDamper:
    den_ = denominator_no_internal_damper(config);
    thetas_ = theta_no_internal_damper(config);
    break;
  case EnginePath::RightTransparent:
    den_ = denominator_right_transparent(config);
    thetas_ = theta_right_transparent(config);
    break;
  }
  series_ = enumerate_terms(den_, horizon);
}

const StepSum &GammaEvaluator::theta(Region region) const
{
  return thetas_[ThetaIndex(config_, region)];
}

void GammaEvaluator::check_horizon(double t) const
{
  if (!(t <= horizon_ + 1e-12 * std::max(1.0, horizon_)))
  {
    Fail(ErrorCode::OutOfHorizon,
         "t = " + std::to_string(t) + " beyond evaluator horizon " + std::to_string(horizon_));
  }
}

double GammaEvaluator::gamma(double x, double xi, double t, int max_order) const
{
  const double L = config_.length();
  if (!(x >= 0.0 && x <= L && xi >= 0.0 && xi <= L))
  {
    Fail(ErrorCode::InvalidArgument, "point outside the bar");
  }
  if (t < 0.0)
  {
    return 0.0;
  }
  check_horizon(t);
  const StepSum &th = theta(classify(config_, x, xi));
  const double c = config_.wave_speed();
  const double tol = config_.front_tolerance();
  const double tol_t = time_tolerance();
  double sum = 0.0;
  for (const SeriesTerm &term : series_)
  {
    if (max_order >= 0 && term.order > max_order)
    {
      break;
    }
    if (term.delay > t + tol_t)
    {
      continue;
    }
    sum += term.weight * th.value(x, xi, c * (t - term.delay), tol);
  }
  return sum;
}

int GammaEvaluator::max_order(double t) const
{
  check_horizon(t);
  int order = 0;
  for (const SeriesTerm &term : series_)
  {
    if (term.delay <= t + time_tolerance())
    {
      order = std::max(order, term.order);
    }
  }
  return order;
}

std::size_t GammaEvaluator::terms_used(double t) const
{
  check_horizon(t);
  return std::count_if(series_.begin(), series_.end(), [&](const SeriesTerm &term) {
    return term.delay <= t + time_tolerance();
  });
}

std::vector<double> GammaEvaluator::breakpoints(double pivot) const
{
  const double tol = config_.front_tolerance();
  std::vector<double> cuts{0.0, pivot, config_.length()};
  if (config_.has_internal_damper())
  {
    cuts.push_back(config_.damper_position());
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> out;
  for (double v : cuts)
  {
    if (out.empty() || v - out.back() > tol)
    {
      out.push_back(v);
    }
  }
  return out;
}

std::vector<SourcePoint> GammaEvaluator::gamma_t_classical(double x, double t, FrontPolicy policy,
                                                           int max_order) const
{
  std::vector<SourcePoint> out;
  if (t < 0.0)
  {
    return out;
  }
  check_horizon(t);
  const double c = config_.wave_speed();
  const double tol = config_.front_tolerance();
  const double tol_t = time_tolerance();
  const bool damped = config_.has_internal_damper();
  const double a = config_.damper_position();
  for_each_xi_interval(x, [&](double lo, double hi, const StepSum &th) {
    for (const SeriesTerm &term : series_)
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
        if (step.arg.kxi == 0)
        {
          continue;
        }
        double xs = (ct - step.arg.k0 - step.arg.kx * x) / step.arg.kxi;
        if (xs < lo - tol || xs > hi + tol)
        {
          continue;
        }
        const bool at_lo = std::abs(xs - lo) <= tol;
        const bool at_hi = std::abs(xs - hi) <= tol;
        if (at_lo || at_hi)
        {
          const double edge = at_lo ? lo : hi;
          if (policy == FrontPolicy::Strict && damped && std::abs(edge - a) <= tol &&
              std::abs(edge - x) > tol)
          {
            Fail(ErrorCode::WavefrontSample, "wavefront sample on the internal damper");
          }
          // H(ct - arg) switches on inside the interval only if arg decreases
          // into it, i.e. the front moves inward as t grows.
          const bool inward = at_lo ? step.arg.kxi > 0 : step.arg.kxi < 0;
          if (!inward)
          {
            continue;
          }
          xs = edge;
        }
        // d/dt H(ct - k0 - kx x - kxi xi) = c delta(ct - ...) -> c / |kxi| at xi*.
        out.push_back({xs, term.weight * step.coef * c});
      }
    }
  });
  return out;
}

std::vector<StepEvent> GammaEvaluator::step_events(double x, double xi, double t,
                                                   int max_order) const
{
  std::vector<StepEvent> out;
  if (t < 0.0)
  {
    return out;
  }
  check_horizon(t);
  const StepSum &th = theta(classify(config_, x, xi));
  const double c = config_.wave_speed();
  const double tol_t = time_tolerance();
  for (const SeriesTerm &term : series_)
  {
    if (max_order >= 0 && term.order > max_order)
    {
      break;
    }
    for (const StepTerm &step : th.terms)
    {
      const double time = term.delay + std::max(0.0, step.arg.at(x, xi)) / c;
      if (time <= t + tol_t)
      {
        out.push_back({time, term.weight * step.coef});
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const StepEvent &l, const StepEvent &r) { return l.time < r.time; });
  return out;
}

std::vector<double> GammaEvaluator::fronts_in_x(double xi, double t) const
{
  std::vector<double> out;
  if (t < 0.0)
  {
    return out;
  }
  check_horizon(t);
  const double c = config_.wave_speed();
  const double tol = config_.front_tolerance();
  const double tol_t = time_tolerance();
  const auto cuts = breakpoints(xi);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
  {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    const StepSum &th = theta(classify(config_, 0.5 * (lo + hi), xi));
    for (const SeriesTerm &term : series_)
    {
      if (term.delay > t + tol_t)
      {
        continue;
      }
      const double ct = c * (t - term.delay);
      for (const StepTerm &step : th.terms)
      {
        if (step.arg.kx == 0)
        {
          continue;
        }
        const double xs = (ct - step.arg.k0 - step.arg.kxi * xi) / step.arg.kx;
        if (xs >= lo - tol && xs <= hi + tol)
        {
          out.push_back(std::clamp(xs, lo, hi));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [tol](double l, double r) { return r - l <= tol; }),
            out.end());
  return out;
}

}  // namespace dalembert
