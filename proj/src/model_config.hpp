#ifndef DALEMBERT_MODEL_CONFIG_HPP
#define DALEMBERT_MODEL_CONFIG_HPP

#include <optional>
#include <vector>

namespace dalembert
{

// Tolerance used to detect the critical value h = -1 of any damper.
inline constexpr double kCriticalTolerance = 1e-12;

// Denominator coefficients with |b| below this are treated as absent.
inline constexpr double kCoefficientDropTolerance = 1e-15;

//
// Physical and dimensionless parameters of a bar with dashpots at x = 0, x = L
// and (optionally) at an internal point x = a.
//
// h3 == 0 is the canonical "no internal damper" encoding; the damper position
// is ignored in that case and may be left empty.
//
struct BarConfig
{
  double length = 0.0;                  // L [m]
  double wave_speed = 0.0;              // c [m/s]
  std::optional<double> damper_position;  // a [m], in (0, L)
  double h1 = 0.0;                      // left end
  double h2 = 0.0;                      // right end
  double h3 = 0.0;                      // internal damper
  double rho_a = 1.0;                   // mass per unit length [kg/m]
};

class ValidatedConfig;

// Checks every BarConfig invariant. Throws Error(CriticalParameter) when any
// 1 + h_i vanishes and Error(BadGeometry) for L <= 0, c <= 0, a outside (0, L).
ValidatedConfig validate(const BarConfig &config);

//
// A BarConfig that has passed validate(). Immutable; safe to share across
// threads.
//
class ValidatedConfig
{
public:
  const BarConfig &params() const { return params_; }

  double length() const { return params_.length; }
  double wave_speed() const { return params_.wave_speed; }
  double h1() const { return params_.h1; }
  double h2() const { return params_.h2; }
  double h3() const { return params_.h3; }
  double rho_a() const { return params_.rho_a; }

  bool has_internal_damper() const { return params_.h3 != 0.0; }

  // Only meaningful when has_internal_damper().
  double damper_position() const { return params_.damper_position.value_or(0.0); }

  // Axial stiffness EA = rho A c^2.
  double axial_stiffness() const { return params_.rho_a * params_.wave_speed * params_.wave_speed; }

  // Snapping tolerance for wavefront comparisons, in metres.
  double front_tolerance() const;

private:
  explicit ValidatedConfig(const BarConfig &p) : params_(p) {}
  friend ValidatedConfig validate(const BarConfig &config);

  BarConfig params_;
};

// R = (1 - h) / (1 + h), the amplitude ratio of a wave reflected by a dashpot.
double reflection_coefficient(double h);

//
// Characteristic denominator in normalised form
//
//   Delta_a(s) = lead * e^{s * lead_delay} * (1 + sum_k b_k e^{-alpha_k s}),
//
// with all delays in seconds. Entries with vanishing b_k are dropped, so
// b.size() is the number m of exponentials actually present.
//
struct DenominatorData
{
  std::vector<double> b;
  std::vector<double> alpha;  // [s], all > 0
  double alpha_min = 0.0;     // +inf when b is empty
  double lead = 1.0;          // (1/2)(1 + h1)(1 + h2)(1 + h3)
  double lead_delay = 0.0;    // L / c [s]

  std::size_t size() const { return b.size(); }
};

// Three-exponent denominator of the full problem (reduces automatically to a
// single exponent when h3 == 0 or when one end is transparent).
DenominatorData denominator_data(const ValidatedConfig &config);

}  // namespace dalembert

#endif  // DALEMBERT_MODEL_CONFIG_HPP
