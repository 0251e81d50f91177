#include "exponent_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "errors.hpp"

namespace dalembert
{

namespace
{

constexpr double kExponentMergeTolerance = 1e-12;

int CheckedUnit(int k)
{
  if (k < -1 || k > 1)
  {
    Fail(ErrorCode::InvalidArgument,
         "exponent coefficient outside {-1, 0, 1}: products must not repeat a spatial symbol");
  }
  return k;
}

// k0 + sign * var as an affine exponent.
AffineExponent Linear(const ValidatedConfig &config, Symbol var, int sign, double k0)
{
  AffineExponent e{k0, 0, 0};
  switch (var)
  {
    case Symbol::X:
      e.kx = sign;
      break;
    case Symbol::Xi:
      e.kxi = sign;
      break;
    case Symbol::Damper:
      e.k0 += sign * config.damper_position();
      break;
  }
  return e;
}

AffineExponent Negated(const AffineExponent &e)
{
  return {-e.k0, -e.kx, -e.kxi};
}

// cosh(s u / c) + h sinh(s u / c) with u = k0 + sign * var.
ExpSum Profile(const ValidatedConfig &config, Symbol var, int sign, double k0, double h)
{
  const AffineExponent up = Linear(config, var, sign, k0);
  return ExpSum{{0.5 * (1.0 + h), up}, {0.5 * (1.0 - h), Negated(up)}};
}

// sinh(s u / c) with u = k0 + sign * var.
ExpSum Sinh(const ValidatedConfig &config, Symbol var, int sign, double k0)
{
  const AffineExponent up = Linear(config, var, sign, k0);
  return ExpSum{{0.5, up}, {-0.5, Negated(up)}};
}

}  // namespace

std::vector<Region> regions(const ValidatedConfig &config)
{
  std::vector<Region> out;
  for (Ordering ordering : {Ordering::XBelowXi, Ordering::XAboveXi})
  {
    if (!config.has_internal_damper())
    {
      out.push_back({ordering, DamperSide::None});
      continue;
    }
    for (DamperSide side : {DamperSide::BothLeft, DamperSide::BothRight, DamperSide::Split})
    {
      out.push_back({ordering, side});
    }
  }
  return out;
}

Region classify(const ValidatedConfig &config, double x, double xi)
{
  Region region;
  region.ordering = x < xi ? Ordering::XBelowXi : Ordering::XAboveXi;
  if (!config.has_internal_damper())
  {
    region.side = DamperSide::None;
  }
  else
  {
    const double a = config.damper_position();
    if (x >= a && xi >= a)
    {
      region.side = DamperSide::BothRight;
    }
    else if (x <= a && xi <= a)
    {
      region.side = DamperSide::BothLeft;
    }
    else
    {
      region.side = DamperSide::Split;
    }
  }
  return region;
}

bool contains(const ValidatedConfig &config, Region region, double x, double xi)
{
  const double tol = config.front_tolerance();
  const double L = config.length();
  if (x < -tol || x > L + tol || xi < -tol || xi > L + tol)
  {
    return false;
  }
  if (region.ordering == Ordering::XBelowXi ? x > xi + tol : x < xi - tol)
  {
    return false;
  }
  if ((region.side == DamperSide::None) == config.has_internal_damper())
  {
    return false;
  }
  const double a = config.damper_position();
  switch (region.side)
  {
    case DamperSide::None:
      return true;
    case DamperSide::BothLeft:
      return x <= a + tol && xi <= a + tol;
    case DamperSide::BothRight:
      return x >= a - tol && xi >= a - tol;
    case DamperSide::Split:
      return (x <= a + tol && xi >= a - tol) || (x >= a - tol && xi <= a + tol);
  }
  return false;
}

std::vector<std::array<double, 2>> region_vertices(const ValidatedConfig &config, Region region)
{
  const double L = config.length();
  const double a = config.damper_position();
  // Vertices for x <= xi; the other ordering mirrors them.
  std::vector<std::array<double, 2>> v;
  switch (region.side)
  {
    case DamperSide::None:
      v = {{0.0, 0.0}, {0.0, L}, {L, L}};
      break;
    case DamperSide::BothLeft:
      v = {{0.0, 0.0}, {0.0, a}, {a, a}};
      break;
    case DamperSide::BothRight:
      v = {{a, a}, {a, L}, {L, L}};
      break;
    case DamperSide::Split:
      v = {{0.0, a}, {0.0, L}, {a, a}, {a, L}};
      break;
  }
  if (region.ordering == Ordering::XAboveXi)
  {
    for (auto &p : v)
    {
      std::swap(p[0], p[1]);
    }
  }
  return v;
}

ExpSum::ExpSum(std::initializer_list<ExpTerm> terms) : terms_(terms)
{
  normalize();
}

ExpSum::ExpSum(std::vector<ExpTerm> terms) : terms_(std::move(terms))
{
  normalize();
}

ExpSum &ExpSum::with_region(Region region)
{
  region_ = region;
  return *this;
}

ExpSum &ExpSum::operator+=(const ExpSum &other)
{
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  if (!region_)
  {
    region_ = other.region_;
  }
  normalize();
  return *this;
}

ExpSum operator*(const ExpSum &lhs, const ExpSum &rhs)
{
  std::vector<ExpTerm> product;
  product.reserve(lhs.size() * rhs.size());
  for (const auto &l : lhs.terms_)
  {
    for (const auto &r : rhs.terms_)
    {
      product.push_back({l.coef * r.coef,
                         {l.exponent.k0 + r.exponent.k0, CheckedUnit(l.exponent.kx + r.exponent.kx),
                          CheckedUnit(l.exponent.kxi + r.exponent.kxi)}});
    }
  }
  ExpSum out(std::move(product));
  out.region_ = lhs.region_ ? lhs.region_ : rhs.region_;
  return out;
}

ExpSum operator*(double scale, ExpSum sum)
{
  for (auto &term : sum.terms_)
  {
    term.coef *= scale;
  }
  sum.normalize();
  return sum;
}

ExpSum ExpSum::shifted(double shift) const
{
  ExpSum out = *this;
  for (auto &term : out.terms_)
  {
    term.exponent.k0 += shift;
  }
  out.normalize();
  return out;
}

std::complex<double> ExpSum::evaluate(std::complex<double> s, double x, double xi, double c) const
{
  std::complex<double> sum = 0.0;
  for (const auto &term : terms_)
  {
    sum += term.coef * std::exp(s * term.exponent.at(x, xi) / c);
  }
  return sum;
}

std::complex<double> ExpSum::derivative_x(std::complex<double> s, double x, double xi,
                                          double c) const
{
  std::complex<double> sum = 0.0;
  for (const auto &term : terms_)
  {
    if (term.exponent.kx != 0)
    {
      sum += term.coef * (s * static_cast<double>(term.exponent.kx) / c) *
             std::exp(s * term.exponent.at(x, xi) / c);
    }
  }
  return sum;
}

void ExpSum::normalize()
{
  std::sort(terms_.begin(), terms_.end(), [](const ExpTerm &l, const ExpTerm &r) {
    return std::tie(l.exponent.kx, l.exponent.kxi, l.exponent.k0) <
           std::tie(r.exponent.kx, r.exponent.kxi, r.exponent.k0);
  });
  std::vector<ExpTerm> merged;
  merged.reserve(terms_.size());
  for (const auto &term : terms_)
  {
    if (!merged.empty())
    {
      auto &last = merged.back();
      if (last.exponent.kx == term.exponent.kx && last.exponent.kxi == term.exponent.kxi &&
          std::abs(last.exponent.k0 - term.exponent.k0) < kExponentMergeTolerance)
      {
        last.coef += term.coef;
        continue;
      }
    }
    merged.push_back(term);
  }
  double largest = 0.0;
  for (const auto &term : merged)
  {
    largest = std::max(largest, std::abs(term.coef));
  }
  std::erase_if(merged, [largest](const ExpTerm &term) {
    return term.coef == 0.0 || std::abs(term.coef) < kCoefficientDropTolerance * largest;
  });
  terms_ = std::move(merged);
}

ExpSum build_profile(const ValidatedConfig &config, End end, Symbol var, bool with_damper,
                     Segment segment)
{
  if (with_damper && !config.has_internal_damper())
  {
    Fail(ErrorCode::InvalidArgument, "damper-corrected profile requested with h3 = 0");
  }
  const double L = config.length();
  const double a = config.damper_position();
  const double h3 = config.h3();

  if (end == End::Left)
  {
    // phi(v) = cosh(s v / c) + h1 sinh(s v / c)
    ExpSum phi = Profile(config, var, +1, 0.0, config.h1());
    if (with_damper && segment == Segment::RightOfDamper)
    {
      // + 2 h3 phi(a) sinh(s (v - a) / c)
      const ExpSum phi_a = Profile(config, Symbol::Damper, +1, 0.0, config.h1());
      phi += (2.0 * h3) * (phi_a * Sinh(config, var, +1, -a));
    }
    return phi;
  }

  // psi(v) = cosh(s (L - v) / c) + h2 sinh(s (L - v) / c)
  ExpSum psi = Profile(config, var, -1, L, config.h2());
  if (with_damper && segment == Segment::LeftOfDamper)
  {
    // + 2 h3 psi(a) sinh(s (a - v) / c)
    const ExpSum psi_a = Profile(config, Symbol::Damper, -1, L, config.h2());
    psi += (2.0 * h3) * (psi_a * Sinh(config, var, -1, a));
  }
  return psi;
}

ExpSum build_delta(const ValidatedConfig &config)
{
  const double h1 = config.h1();
  const double h2 = config.h2();
  const double L = config.length();
  ExpSum delta{{0.5 * (1.0 + h1) * (1.0 + h2), {L, 0, 0}},
               {-0.5 * (1.0 - h1) * (1.0 - h2), {-L, 0, 0}}};
  if (config.has_internal_damper())
  {
    const ExpSum phi_a = build_profile(config, End::Left, Symbol::Damper, false, Segment::LeftOfDamper);
    const ExpSum psi_a = build_profile(config, End::Right, Symbol::Damper, false, Segment::LeftOfDamper);
    delta += (2.0 * config.h3()) * (phi_a * psi_a);
  }
  return delta;
}

ExpSum build_numerator(const ValidatedConfig &config, Region region)
{
  if ((region.side == DamperSide::None) == config.has_internal_damper())
  {
    Fail(ErrorCode::RegionMismatch,
         config.has_internal_damper() ? "region ignores the internal damper"
                                      : "region refers to an internal damper but h3 = 0");
  }

  // The smaller of (x, xi) carries phi, the larger psi.
  const Symbol lo = region.ordering == Ordering::XBelowXi ? Symbol::X : Symbol::Xi;
  const Symbol hi = region.ordering == Ordering::XBelowXi ? Symbol::Xi : Symbol::X;

  const bool damped = region.side != DamperSide::None;
  const Segment lo_seg =
      region.side == DamperSide::BothRight ? Segment::RightOfDamper : Segment::LeftOfDamper;
  const Segment hi_seg =
      region.side == DamperSide::BothLeft ? Segment::LeftOfDamper : Segment::RightOfDamper;

  // G = c phi_a(min) psi_a(max) / (s Delta_a).
  ExpSum numerator = build_profile(config, End::Left, lo, damped, lo_seg) *
                     build_profile(config, End::Right, hi, damped, hi_seg);

  const double lead = 0.5 * (1.0 + config.h1()) * (1.0 + config.h2()) * (1.0 + config.h3());
  ExpSum out = (config.wave_speed() / lead) * numerator.shifted(-config.length());
  out.with_region(region);
  return out;
}

StepSum invert_termwise(const ValidatedConfig &config, const ExpSum &numerator)
{
  if (!numerator.region())
  {
    Fail(ErrorCode::RegionMismatch, "termwise inversion needs a region-resolved numerator");
  }
  const Region region = *numerator.region();
  const auto corners = region_vertices(config, region);
  const double tol = config.front_tolerance();

  StepSum out;
  out.region = region;
  out.terms.reserve(numerator.size());
  for (const auto &term : numerator.terms())
  {
    for (const auto &corner : corners)
    {
      const double e = term.exponent.at(corner[0], corner[1]);
      if (e > tol)
      {
        std::ostringstream msg;
        msg << "exponent " << term.exponent.k0 << " + " << term.exponent.kx << " x + "
            << term.exponent.kxi << " xi is positive (" << e << ") at (" << corner[0] << ", "
            << corner[1] << ")";
        Fail(ErrorCode::PositiveExponent, msg.str());
      }
    }
    out.terms.push_back({term.coef, Negated(term.exponent)});
  }
  return out;
}

double eval_step_sum(const ValidatedConfig &config, const StepSum &sum, double x, double xi,
                     double t)
{
  if (!contains(config, sum.region, x, xi))
  {
    std::ostringstream msg;
    msg << "(x, xi) = (" << x << ", " << xi << ") lies outside the step sum's region";
    Fail(ErrorCode::RegionMismatch, msg.str());
  }
  return sum.value(x, xi, config.wave_speed() * t, config.front_tolerance());
}

}  // namespace dalembert
