#ifndef DALEMBERT_EXPONENT_ALGEBRA_HPP
#define DALEMBERT_EXPONENT_ALGEBRA_HPP

#include <array>
#include <complex>
#include <initializer_list>
#include <optional>
#include <vector>

#include "model_config.hpp"

namespace dalembert
{

//
// Branch resolution. The Green's function changes form across x = xi and across
// the damper position a; fixing both branches makes every exponent affine in
// (x, xi).
//
enum class Ordering
{
  XBelowXi,  // x < xi
  XAboveXi,  // x >= xi
};

enum class DamperSide
{
  None,       // no internal damper
  BothLeft,   // x <= a and xi <= a
  BothRight,  // x >= a and xi >= a
  Split,      // a separates x and xi
};

struct Region
{
  Ordering ordering = Ordering::XBelowXi;
  DamperSide side = DamperSide::None;

  bool operator==(const Region &) const = default;
};

// Two regions without an internal damper, six with one.
std::vector<Region> regions(const ValidatedConfig &config);

// Region holding (x, xi). Ties follow the H(0) = 1 convention: x = a counts as
// both left and right of the damper, with BothRight taking precedence.
Region classify(const ValidatedConfig &config, double x, double xi);

// Closed-set membership with the configuration's front tolerance.
bool contains(const ValidatedConfig &config, Region region, double x, double xi);

// Corners of the region as a convex polygon in the (x, xi) square.
std::vector<std::array<double, 2>> region_vertices(const ValidatedConfig &config, Region region);

//
// Exponent s * (k0 + kx * x + kxi * xi) / c of a single exponential term; k0 is
// a length. kx and kxi are restricted to {-1, 0, 1}.
//
struct AffineExponent
{
  double k0 = 0.0;
  int kx = 0;
  int kxi = 0;

  double at(double x, double xi) const { return k0 + kx * x + kxi * xi; }
};

struct ExpTerm
{
  double coef = 0.0;
  AffineExponent exponent;
};

//
// Finite sum of exponentials with affine exponents. Terms with equal exponents
// are merged and vanishing coefficients dropped after every operation.
//
class ExpSum
{
public:
  ExpSum() = default;
  ExpSum(std::initializer_list<ExpTerm> terms);
  explicit ExpSum(std::vector<ExpTerm> terms);

  const std::vector<ExpTerm> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  const std::optional<Region> &region() const { return region_; }
  ExpSum &with_region(Region region);

  ExpSum &operator+=(const ExpSum &other);
  friend ExpSum operator+(ExpSum lhs, const ExpSum &rhs) { return lhs += rhs; }
  friend ExpSum operator*(const ExpSum &lhs, const ExpSum &rhs);
  friend ExpSum operator*(double scale, ExpSum sum);

  // Multiplies by e^{s * shift / c}.
  ExpSum shifted(double shift) const;

  std::complex<double> evaluate(std::complex<double> s, double x, double xi, double c) const;

  // Partial derivative with respect to x.
  std::complex<double> derivative_x(std::complex<double> s, double x, double xi, double c) const;

private:
  void normalize();

  std::vector<ExpTerm> terms_;
  std::optional<Region> region_;
};

//
// Finite sum of unit steps, sum coef * H(c t - arg(x, xi)), valid on one region.
// H(0) = 1.
//
struct StepTerm
{
  double coef = 0.0;
  AffineExponent arg;  // arrival distance [m]; arrival time is arg / c
};

struct StepSum
{
  Region region;
  std::vector<StepTerm> terms;

  // Sum at distance ct = c * t with snapping tolerance tol [m]. No region check.
  double value(double x, double xi, double ct, double tol) const
  {
    double sum = 0.0;
    for (const auto &term : terms)
    {
      if (ct - term.arg.at(x, xi) >= -tol)
      {
        sum += term.coef;
      }
    }
    return sum;
  }
};

enum class End
{
  Left,   // phi: satisfies the x = 0 boundary condition, phi(0) = 1
  Right,  // psi: satisfies the x = L boundary condition, psi(L) = 1
};

enum class Segment
{
  LeftOfDamper,
  RightOfDamper,
};

// Which spatial symbol a profile is expressed in. Damper evaluates the profile
// at the constant x = a.
enum class Symbol
{
  X,
  Xi,
  Damper,
};

// phi, psi (with_damper = false) or phi_a, psi_a in the symbol `var`, on the
// given side of the damper. The damper correction of phi_a lives right of a,
// that of psi_a left of a.
ExpSum build_profile(const ValidatedConfig &config, End end, Symbol var, bool with_damper,
                     Segment segment);

inline ExpSum build_phi(const ValidatedConfig &config, End end, bool with_damper,
                        Segment segment = Segment::LeftOfDamper)
{
  return build_profile(config, end, Symbol::X, with_damper, segment);
}

// Delta_a(s) = Delta(s) + 2 h3 phi(a) psi(a), assembled from profiles.
ExpSum build_delta(const ValidatedConfig &config);

// Green's function numerator on `region`, divided by the leading denominator
// factor (1/2)(1 + h1)(1 + h2)(1 + h3) e^{sL/c}. The 1/s factor is implicit; the
// coefficients carry the factor c.
ExpSum build_numerator(const ValidatedConfig &config, Region region);

// coef * e^{-beta s} -> coef * H(t - beta), term by term. Throws
// Error(PositiveExponent) if any exponent is positive somewhere in the region.
StepSum invert_termwise(const ValidatedConfig &config, const ExpSum &numerator);

// Checked evaluation: throws Error(RegionMismatch) if (x, xi) is outside the
// sum's region.
double eval_step_sum(const ValidatedConfig &config, const StepSum &sum, double x, double xi,
                     double t);

}  // namespace dalembert

#endif  // DALEMBERT_EXPONENT_ALGEBRA_HPP
