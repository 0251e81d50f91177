#ifndef DALEMBERT_TOOLS_SCENARIO_HPP
#define DALEMBERT_TOOLS_SCENARIO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dalembert/dalembert.h"

namespace cli
{

// Raised for anything wrong with the scenario file itself (exit code 2).
class ScenarioError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Scenario
{
  dal_bar_params bar{};

  std::optional<dal_gaussian> pulse;
  std::optional<double> uniform;  // constant initial displacement

  bool forced = false;
  double force_position = 0.0;
  double force_amplitude = 0.0;
  double force_omega = 0.0;

  dal_grid grid{};

  std::string csv;   // empty: standard output
  std::string plot;  // empty: no plot script

  std::optional<double> greens_x;
  std::optional<double> greens_xi;

  std::string oracle = "fem";
  int elements = 200;
  double fem_dt = 0.0;
  int laplace_terms = 20000;
  std::optional<double> tolerance;
  std::optional<double> compare_xi;

  std::vector<int> orders;
};

//
// INI file with sections [bar], [dampers], [initial], [forcing], [grid],
// [output], [greens], [compare] and [truncation]. Every key is checked before
// anything is computed; unknown sections or keys are errors.
//
Scenario load_scenario(const std::string &path);

// "0,1,2" -> {0, 1, 2}.
std::vector<int> parse_orders(const std::string &text);

}  // namespace cli

#endif  // DALEMBERT_TOOLS_SCENARIO_HPP
