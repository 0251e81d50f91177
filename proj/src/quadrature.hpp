#ifndef DALEMBERT_QUADRATURE_HPP
#define DALEMBERT_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace dalembert
{

using Profile = std::function<double(double)>;

// Integral of some fixed integrand over [lo, hi].
using SegmentIntegral = std::function<double(double lo, double hi)>;

// 10-point Gauss-Legendre on [lo, hi], split into panels no longer than
// max_panel.
double composite_gauss(const Profile &f, double lo, double hi, double max_panel);

SegmentIntegral composite_gauss_rule(Profile f, double max_panel);

//
// Tabulated primitive F(x) = int_lo^x f of a smooth function: cumulative sums
// at uniform panel nodes plus one Gauss-Legendre pass over the partial panel.
//
class PrimitiveTable
{
public:
  PrimitiveTable(Profile f, double lo, double hi, int panels);

  double primitive(double x) const;
  double operator()(double lo, double hi) const { return primitive(hi) - primitive(lo); }

private:
  Profile f_;
  double lo_;
  double hi_;
  double panel_;
  std::vector<double> cumulative_;
};

// Gauss-Legendre nodes and weights on [-1, 1] used by the panel rules.
const std::vector<double> &gauss_nodes();
const std::vector<double> &gauss_weights();

}  // namespace dalembert

#endif  // DALEMBERT_QUADRATURE_HPP
