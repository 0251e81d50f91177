#include "quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

namespace dalembert
{

namespace
{

using Rule = boost::math::quadrature::gauss<double, 10>;

struct SymmetricRule
{
  std::vector<double> nodes;
  std::vector<double> weights;

  SymmetricRule()
  {
    // Boost stores the non-negative half of a symmetric rule.
    const auto &x = Rule::abscissa();
    const auto &w = Rule::weights();
    for (std::size_t i = 0; i < x.size(); ++i)
    {
      nodes.push_back(x[i]);
      weights.push_back(w[i]);
      if (x[i] != 0.0)
      {
        nodes.push_back(-x[i]);
        weights.push_back(w[i]);
      }
    }
  }
};

const SymmetricRule &Symmetric()
{
  static const SymmetricRule rule;
  return rule;
}

double Panel(const Profile &f, double lo, double hi)
{
  const auto &rule = Symmetric();
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
  {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

}  // namespace

const std::vector<double> &gauss_nodes()
{
  return Symmetric().nodes;
}

const std::vector<double> &gauss_weights()
{
  return Symmetric().weights;
}

double composite_gauss(const Profile &f, double lo, double hi, double max_panel)
{
  if (!(hi > lo))
  {
    return hi == lo ? 0.0 : -composite_gauss(f, hi, lo, max_panel);
  }
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_panel)));
  const double width = (hi - lo) / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k)
  {
    const double a = lo + k * width;
    const double b = k + 1 == panels ? hi : a + width;
    sum += Panel(f, a, b);
  }
  return sum;
}

SegmentIntegral composite_gauss_rule(Profile f, double max_panel)
{
  return [f = std::move(f), max_panel](double lo, double hi) {
    return composite_gauss(f, lo, hi, max_panel);
  };
}

PrimitiveTable::PrimitiveTable(Profile f, double lo, double hi, int panels)
    : f_(std::move(f)), lo_(lo), hi_(hi), panel_((hi - lo) / panels)
{
  cumulative_.resize(panels + 1, 0.0);
  for (int k = 0; k < panels; ++k)
  {
    cumulative_[k + 1] = cumulative_[k] + Panel(f_, lo_ + k * panel_, lo_ + (k + 1) * panel_);
  }
}

double PrimitiveTable::primitive(double x) const
{
  x = std::clamp(x, lo_, hi_);
  const int last = static_cast<int>(cumulative_.size()) - 1;
  const int k = std::clamp(static_cast<int>((x - lo_) / panel_), 0, last);
  const double node = lo_ + k * panel_;
  if (x == node)
  {
    return cumulative_[k];
  }
  return cumulative_[k] + Panel(f_, node, x);
}

}  // namespace dalembert
