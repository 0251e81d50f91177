#ifndef DALEMBERT_DALEMBERT_ENGINE_HPP
#define DALEMBERT_DALEMBERT_ENGINE_HPP

#include <vector>

#include "exponent_algebra.hpp"
#include "model_config.hpp"

namespace dalembert
{

// Passed as max_order to use every series order the Heaviside factors allow.
inline constexpr int kAllOrders = -1;

//
// One term of the multinomial expansion of 1 / (1 + sum_k b_k e^{-alpha_k s}):
// weight * e^{-delay s} with
//   weight = (-1)^n n! / (n_1! ... n_m!) * prod_k b_k^{n_k},
//   delay  = sum_k n_k alpha_k.
//
struct SeriesTerm
{
  int order = 0;
  std::vector<int> counts;
  double weight = 1.0;
  double delay = 0.0;  // [s]
};

// Every term with delay <= t, ordered lexicographically by (order, counts) with
// larger leading counts first. Order never exceeds floor(t / alpha_min).
std::vector<SeriesTerm> enumerate_terms(const DenominatorData &den, double t);

enum class EnginePath
{
  General,           // m-exponent denominator, numerator from the exponent algebra
  NoInternalDamper,  // closed forms for h3 = 0
  RightTransparent,  // closed forms for h2 = 1 with an internal damper
};

// Closed-form data of the dedicated paths. These do not go through the
// exponent algebra and serve as its cross-check.
DenominatorData denominator_no_internal_damper(const ValidatedConfig &config);
DenominatorData denominator_right_transparent(const ValidatedConfig &config);
std::vector<StepSum> theta_no_internal_damper(const ValidatedConfig &config);
std::vector<StepSum> theta_right_transparent(const ValidatedConfig &config);

// Theta on every region, by termwise inversion of build_numerator().
std::vector<StepSum> theta_general(const ValidatedConfig &config);

// A sample xi* of the initial displacement and its weight in int Gamma_t u0 dxi.
struct SourcePoint
{
  double position = 0.0;
  double weight = 0.0;
};

// Gamma(x, xi, .) jumps by `weight` at `time`.
struct StepEvent
{
  double time = 0.0;
  double weight = 0.0;
};

// What gamma_t_classical does when a sample lands on the damper, where the
// integrand changes form.
enum class FrontPolicy
{
  Strict,      // throw Error(WavefrontSample)
  RightLimit,  // keep the sample iff it moves into the interval as t increases
};

//
// Time-domain Green's function Gamma(x, xi, t) as a finite d'Alembert sum
//
//   Gamma = sum_terms weight * Theta(x, xi, t - delay),
//
// exact for every t up to the construction horizon. Immutable; evaluations are
// pure and may run concurrently.
//
class GammaEvaluator
{
public:
  GammaEvaluator(const ValidatedConfig &config, double horizon,
                 EnginePath path = EnginePath::General);

  const ValidatedConfig &config() const { return config_; }
  const DenominatorData &denominator() const { return den_; }
  EnginePath path() const { return path_; }
  double horizon() const { return horizon_; }
  const std::vector<SeriesTerm> &series() const { return series_; }
  const StepSum &theta(Region region) const;

  double gamma(double x, double xi, double t, int max_order = kAllOrders) const;

  // Largest series order with a term active at t, and the count of orders
  // 0..max_order(t).
  int max_order(double t) const;
  int orders_used(double t) const { return max_order(t) + 1; }

  // Number of series terms whose Heaviside factor is active at t.
  std::size_t terms_used(double t) const;

  // Classical part of Gamma_t(x, ., t): point samples whose weighted sum against
  // u0 equals int Gamma_t(x, xi, t) u0(xi) dxi. Pure delta-in-time parts are
  // dropped. Samples are not merged.
  std::vector<SourcePoint> gamma_t_classical(double x, double t,
                                             FrontPolicy policy = FrontPolicy::Strict,
                                             int max_order = kAllOrders) const;

  // Jumps of Gamma(x, xi, .) on [0, t].
  std::vector<StepEvent> step_events(double x, double xi, double t,
                                     int max_order = kAllOrders) const;

  // Positions where Gamma(., xi, t) jumps, sorted and deduplicated.
  std::vector<double> fronts_in_x(double xi, double t) const;

  // Calls visit(lo, hi, theta) for each maximal xi-interval of [0, L] on which
  // the region of (x, xi) does not change.
  template <class Visit>
  void for_each_xi_interval(double x, Visit &&visit) const
  {
    const auto cuts = breakpoints(x);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    {
      const double lo = cuts[k];
      const double hi = cuts[k + 1];
      visit(lo, hi, theta(classify(config_, x, 0.5 * (lo + hi))));
    }
  }

  // Seconds of slack in all time comparisons.
  double time_tolerance() const { return config_.front_tolerance() / config_.wave_speed(); }

  // Throws Error(OutOfHorizon) past the construction horizon.
  void check_horizon(double t) const;

private:
  std::vector<double> breakpoints(double pivot) const;

  ValidatedConfig config_;
  EnginePath path_;
  double horizon_;
  DenominatorData den_;
  std::vector<StepSum> thetas_;
  std::vector<SeriesTerm> series_;
};

}  // namespace dalembert

#endif  // DALEMBERT_DALEMBERT_ENGINE_HPP
