#include "scenario.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace cli
{
namespace
{

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kSchema = {
    {"bar", {"L", "c", "a", "rhoA"}},
    {"dampers", {"h1", "h2", "h3"}},
    {"initial", {"pulse", "center", "width", "amplitude", "velocity"}},
    {"forcing", {"type", "x", "F0", "omega"}},
    {"grid", {"nx", "nt", "t_max"}},
    {"output", {"csv", "plot"}},
    {"greens", {"x", "xi"}},
    {"compare", {"oracle", "elements", "dt", "terms", "tolerance", "xi"}},
    {"truncation", {"orders"}},
};

class Section
{
public:
  Section(const pt::ptree &root, const std::string &name) : name_(name)
  {
    if (auto child = root.get_child_optional(name))
    {
      tree_ = *child;
    }
  }

  std::optional<std::string> text(const std::string &key) const
  {
    if (auto value = tree_.get_optional<std::string>(key))
    {
      return *value;
    }
    return std::nullopt;
  }

  std::optional<double> number(const std::string &key) const
  {
    const auto raw = text(key);
    if (!raw)
    {
      return std::nullopt;
    }
    double value = 0.0;
    const char *end = raw->data() + raw->size();
    const auto [ptr, ec] = std::from_chars(raw->data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value))
    {
      throw ScenarioError(where(key) + ": '" + *raw + "' is not a finite number");
    }
    return value;
  }

  double required(const std::string &key) const
  {
    const auto value = number(key);
    if (!value)
    {
      throw ScenarioError(where(key) + " is required");
    }
    return *value;
  }

  std::optional<int> integer(const std::string &key) const
  {
    const auto raw = text(key);
    if (!raw)
    {
      return std::nullopt;
    }
    int value = 0;
    const char *end = raw->data() + raw->size();
    const auto [ptr, ec] = std::from_chars(raw->data(), end, value);
    if (ec != std::errc() || ptr != end)
    {
      throw ScenarioError(where(key) + ": '" + *raw + "' is not an integer");
    }
    return value;
  }

  std::string where(const std::string &key) const { return "[" + name_ + "] " + key; }

private:
  std::string name_;
  pt::ptree tree_;
};

void CheckKeys(const pt::ptree &root)
{
  for (const auto &[section, body] : root)
  {
    const auto schema = kSchema.find(section);
    if (schema == kSchema.end())
    {
      throw ScenarioError(!body.data().empty() ? "key '" + section + "' outside any section"
                                               : "unknown section [" + section + "]");
    }
    for (const auto &[key, value] : body)
    {
      if (!schema->second.count(key))
      {
        throw ScenarioError("unknown key '" + key + "' in [" + section + "]");
      }
    }
  }
}

}  // namespace

std::vector<int> parse_orders(const std::string &text)
{
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size())
  {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string item = text.substr(start, comma - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || value < 0)
    {
      throw ScenarioError("orders must be a comma-separated list of non-negative integers");
    }
    out.push_back(value);
    start = comma + 1;
  }
  return out;
}

Scenario load_scenario(const std::string &path)
{
  pt::ptree root;
  try
  {
    pt::read_ini(path, root);
  }
  catch (const pt::ini_parser_error &e)
  {
    throw ScenarioError(e.what());
  }
  CheckKeys(root);

  Scenario s;
  const Section bar(root, "bar");
  s.bar.length = bar.required("L");
  s.bar.wave_speed = bar.required("c");
  if (auto a = bar.number("a"))
  {
    s.bar.damper_position = *a;
    s.bar.has_damper_position = 1;
  }
  s.bar.rho_a = bar.number("rhoA").value_or(1.0);
  if (!(s.bar.rho_a > 0.0))
  {
    throw ScenarioError(bar.where("rhoA") + " must be positive");
  }

  const Section dampers(root, "dampers");
  s.bar.h1 = dampers.required("h1");
  s.bar.h2 = dampers.required("h2");
  s.bar.h3 = dampers.number("h3").value_or(0.0);

  const Section initial(root, "initial");
  const std::string pulse = initial.text("pulse").value_or("none");
  if (pulse == "gaussian")
  {
    s.pulse = dal_gaussian{initial.required("center"), initial.required("width"),
                           initial.required("amplitude")};
    if (!(s.pulse->width > 0.0))
    {
      throw ScenarioError(initial.where("width") + " must be positive");
    }
  }
  else if (pulse == "uniform")
  {
    s.uniform = initial.required("amplitude");
    if (initial.text("center") || initial.text("width"))
    {
      throw ScenarioError("[initial] a uniform displacement takes only an amplitude");
    }
  }
  else if (pulse != "none")
  {
    throw ScenarioError(initial.where("pulse") + " must be 'gaussian', 'uniform' or 'none'");
  }
  else if (initial.text("center") || initial.text("width") || initial.text("amplitude"))
  {
    throw ScenarioError("[initial] pulse parameters given without pulse = gaussian");
  }
  if (initial.text("velocity").value_or("none") != "none")
  {
    throw ScenarioError(initial.where("velocity") + " must be 'none'");
  }

  const Section forcing(root, "forcing");
  const std::string type = forcing.text("type").value_or("none");
  if (type == "point_harmonic")
  {
    s.forced = true;
    s.force_position = forcing.required("x");
    s.force_amplitude = forcing.required("F0");
    s.force_omega = forcing.required("omega");
  }
  else if (type != "none")
  {
    throw ScenarioError(forcing.where("type") + " must be 'point_harmonic' or 'none'");
  }
  else if (forcing.text("x") || forcing.text("F0") || forcing.text("omega"))
  {
    throw ScenarioError("[forcing] parameters given without type = point_harmonic");
  }

  const Section grid(root, "grid");
  s.grid.nx = grid.integer("nx").value_or(0);
  s.grid.nt = grid.integer("nt").value_or(0);
  s.grid.t_max = grid.required("t_max");
  if (s.grid.nx < 2 || s.grid.nt < 2)
  {
    throw ScenarioError("[grid] nx and nt are required and must be at least 2");
  }
  if (!(s.grid.t_max > 0.0))
  {
    throw ScenarioError(grid.where("t_max") + " must be positive");
  }

  const Section output(root, "output");
  s.csv = output.text("csv").value_or("");
  s.plot = output.text("plot").value_or("");

  const Section greens(root, "greens");
  s.greens_x = greens.number("x");
  s.greens_xi = greens.number("xi");

  const Section compare(root, "compare");
  s.oracle = compare.text("oracle").value_or("fem");
  if (s.oracle != "fem" && s.oracle != "laplace")
  {
    throw ScenarioError(compare.where("oracle") + " must be 'fem' or 'laplace'");
  }
  s.elements = compare.integer("elements").value_or(200);
  s.fem_dt = compare.number("dt").value_or(0.0);
  s.laplace_terms = compare.integer("terms").value_or(20000);
  if (s.elements < 1 || s.laplace_terms < 1)
  {
    throw ScenarioError("[compare] elements and terms must be positive");
  }
  s.tolerance = compare.number("tolerance");
  s.compare_xi = compare.number("xi");

  const Section truncation(root, "truncation");
  if (auto orders = truncation.text("orders"))
  {
    s.orders = parse_orders(*orders);
  }
  return s;
}

}  // namespace cli
