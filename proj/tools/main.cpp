// dalembert: command-line front end over the C API.
#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dalembert/dalembert.h"
#include "output.hpp"
#include "scenario.hpp"

namespace
{

using cli::CsvTable;
using cli::Scenario;

enum ExitCode
{
  kOk = 0,
  kConfigError = 2,
  kComputeError = 3,
  kToleranceExceeded = 4,
};

struct Failure
{
  int code;
  std::string message;
};

double Uniform(double, void *level)
{
  return *static_cast<const double *>(level);
}

void Check(dal_status status, int code, const std::string &context)
{
  if (status != DAL_OK)
  {
    throw Failure{code, context + ": " + dal_status_name(status) + " (" +
                            dal_last_error_message() + ")"};
  }
}

struct BarDeleter
{
  void operator()(dal_bar *p) const { dal_bar_destroy(p); }
};
struct GreensDeleter
{
  void operator()(dal_greens *p) const { dal_greens_destroy(p); }
};
struct ResponseDeleter
{
  void operator()(dal_response *p) const { dal_response_destroy(p); }
};
using BarPtr = std::unique_ptr<dal_bar, BarDeleter>;
using GreensPtr = std::unique_ptr<dal_greens, GreensDeleter>;
using ResponsePtr = std::unique_ptr<dal_response, ResponseDeleter>;

struct Options
{
  std::string scenario;
  std::string out;
  std::string plot;
  std::optional<double> x;
  std::optional<double> xi;
  std::string oracle;
  std::string orders;
};

// Scenario plus the handles every command needs; all validation happens here.
struct Setup
{
  explicit Setup(const Options &opt);
  Setup(const Setup &) = delete;
  Setup &operator=(const Setup &) = delete;

  Scenario s;
  BarPtr bar;
  dal_problem problem{};
  std::string csv;
  std::string plot;

  double length() const { return s.bar.length; }
  double transit() const { return s.bar.length / s.bar.wave_speed; }

  std::vector<double> xs() const
  {
    std::vector<double> out;
    for (int i = 0; i < s.grid.nx; ++i)
    {
      out.push_back(i + 1 == s.grid.nx ? length() : length() * i / (s.grid.nx - 1));
    }
    return out;
  }

  std::vector<double> ts() const
  {
    std::vector<double> out;
    for (int j = 0; j < s.grid.nt; ++j)
    {
      out.push_back(j + 1 == s.grid.nt ? s.grid.t_max : s.grid.t_max * j / (s.grid.nt - 1));
    }
    return out;
  }

  ResponsePtr response(double horizon) const
  {
    dal_response *r = nullptr;
    Check(dal_response_create(bar.get(), &problem, horizon, &r), kConfigError, "response");
    return ResponsePtr(r);
  }

  GreensPtr greens(double horizon) const
  {
    dal_greens *g = nullptr;
    Check(dal_greens_create(bar.get(), horizon, DAL_PATH_GENERAL, &g), kConfigError,
          "Green's function");
    return GreensPtr(g);
  }

  double position(const std::optional<double> &flag, const std::optional<double> &key,
                  const char *name) const
  {
    const auto value = flag ? flag : key;
    if (!value)
    {
      throw Failure{kConfigError, std::string(name) + " is required (flag or scenario key)"};
    }
    if (!(*value >= 0.0 && *value <= length()))
    {
      throw Failure{kConfigError, std::string(name) + " must lie in [0, L]"};
    }
    return *value;
  }
};


Setup::Setup(const Options &opt)
{
  try
  {
    s = cli::load_scenario(opt.scenario);
  }
  catch (const cli::ScenarioError &e)
  {
    throw Failure{kConfigError, opt.scenario + ": " + e.what()};
  }
  dal_bar *handle = nullptr;
  Check(dal_bar_create(&s.bar, &handle), kConfigError, "bar");
  bar.reset(handle);

  if (s.pulse)
  {
    problem.u0 = dal_gaussian_eval;
    problem.u0_user = &*s.pulse;
  }
  if (s.uniform)
  {
    problem.u0 = Uniform;
    problem.u0_user = &*s.uniform;
  }
  if (s.forced)
  {
    problem.forcing = DAL_FORCING_POINT_HARMONIC;
    problem.force_position = s.force_position;
    problem.force_amplitude = s.force_amplitude;
    problem.force_omega = s.force_omega;
  }
  csv = opt.out.empty() ? s.csv : opt.out;
  plot = opt.plot.empty() ? s.plot : opt.plot;
  if (!plot.empty() && csv.empty())
  {
    throw Failure{kConfigError, "a plot script needs a CSV output path"};
  }
}

void Emit(const Setup &setup, const CsvTable &table, const std::string &plot_script)
{
  try
  {
    cli::write_text(setup.csv, table.str());
    if (!setup.plot.empty())
    {
      cli::write_text(setup.plot, plot_script);
    }
  }
  catch (const std::exception &e)
  {
    throw Failure{kComputeError, e.what()};
  }
}

int Greens(const Options &opt)
{
  const Setup setup(opt);
  const double x = setup.position(opt.x, setup.s.greens_x, "x");
  const double xi = setup.position(opt.xi, setup.s.greens_xi, "xi");
  const GreensPtr g = setup.greens(setup.s.grid.t_max);

  CsvTable table({"t", "gamma", "terms_used", "max_order"});
  for (double t : setup.ts())
  {
    double gamma = 0.0;
    int orders = 0;
    int max_order = 0;
    Check(dal_greens_eval(g.get(), x, xi, t, DAL_ALL_ORDERS, &gamma), kComputeError, "gamma");
    Check(dal_greens_orders(g.get(), t, &orders, &max_order), kComputeError, "orders");
    table.add_row({t, gamma, double(orders), double(max_order)});
  }
  Emit(setup, table, cli::plot_greens(setup.csv));
  return kOk;
}

int Respond(const Options &opt)
{
  const Setup setup(opt);
  const ResponsePtr r = setup.response(setup.s.grid.t_max);
  const auto xs = setup.xs();
  const auto ts = setup.ts();
  std::vector<double> u(xs.size() * ts.size());
  Check(dal_response_field(r.get(), &setup.s.grid, DAL_ALL_ORDERS, u.data(), nullptr),
        kComputeError, "response field");

  CsvTable table({"x", "t", "u"});
  for (std::size_t j = 0; j < ts.size(); ++j)
  {
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
      table.add_row({xs[i], ts[j], u[j * xs.size() + i]});
    }
  }
  Emit(setup, table, cli::plot_field(setup.csv, "displacement u(x, t)"));
  return kOk;
}

int Compare(const Options &opt)
{
  const Setup setup(opt);
  const std::string oracle = opt.oracle.empty() ? setup.s.oracle : opt.oracle;
  if (oracle != "fem" && oracle != "laplace")
  {
    throw Failure{kConfigError, "oracle must be 'fem' or 'laplace'"};
  }
  const auto xs = setup.xs();
  const auto ts = setup.ts();
  CsvTable table({"x", "t", "u_engine", "u_oracle", "abs_err"});
  double worst = 0.0;
  std::size_t samples = 0;
  double tolerance = 0.0;

  if (oracle == "fem")
  {
    tolerance = setup.s.tolerance.value_or(5e-3);
    const ResponsePtr r = setup.response(setup.s.grid.t_max);
    std::vector<double> exact(xs.size() * ts.size());
    std::vector<double> fem(exact.size());
    Check(dal_response_field(r.get(), &setup.s.grid, DAL_ALL_ORDERS, exact.data(), nullptr),
          kComputeError, "response field");
    const dal_status status = dal_fem_solve(setup.bar.get(), &setup.problem, &setup.s.grid,
                                            setup.s.elements, setup.s.fem_dt, fem.data(), nullptr);
    Check(status, status == DAL_INVALID_ARGUMENT || status == DAL_BAD_GEOMETRY ? kConfigError
                                                                                : kComputeError,
          "FEM oracle");
    for (std::size_t j = 0; j < ts.size(); ++j)
    {
      for (std::size_t i = 0; i < xs.size(); ++i)
      {
        const std::size_t k = j * xs.size() + i;
        const double err = std::abs(exact[k] - fem[k]);
        worst = std::max(worst, err);
        table.add_row({xs[i], ts[j], exact[k], fem[k], err});
        ++samples;
      }
    }
  }
  else
  {
    // The inverter has no response assembly: compare Gamma(x, xi, t) off its fronts.
    tolerance = setup.s.tolerance.value_or(1e-6);
    const double xi = setup.position(opt.xi, setup.s.compare_xi, "xi");
    const double keep_out = 0.01 * setup.transit();
    const GreensPtr g = setup.greens(setup.s.grid.t_max + keep_out);
    for (double t : ts)
    {
      if (t <= 0.0)
      {
        continue;
      }
      for (double x : xs)
      {
        size_t count = 0;
        dal_status status =
            dal_greens_step_times(g.get(), x, xi, t + keep_out, nullptr, nullptr, 0, &count);
        std::vector<double> times(count);
        std::vector<double> jumps(count);
        if (status == DAL_BUFFER_TOO_SMALL)
        {
          status = dal_greens_step_times(g.get(), x, xi, t + keep_out, times.data(), jumps.data(),
                                         count, &count);
        }
        Check(status, kComputeError, "step times");
        const bool near = std::any_of(times.begin(), times.end(),
                                      [&](double s) { return std::abs(s - t) <= keep_out; });
        if (near)
        {
          continue;
        }
        double engine = 0.0;
        double inverted = 0.0;
        Check(dal_greens_eval(g.get(), x, xi, t, DAL_ALL_ORDERS, &engine), kComputeError, "gamma");
        Check(dal_laplace_greens(setup.bar.get(), x, xi, t, setup.s.laplace_terms, &inverted),
              kComputeError, "Laplace oracle");
        const double err = std::abs(engine - inverted);
        worst = std::max(worst, err);
        table.add_row({x, t, engine, inverted, err});
        ++samples;
      }
    }
  }

  Emit(setup, table, cli::plot_compare(setup.csv));
  const bool within = worst <= tolerance;
  std::cerr << "compare " << oracle << ": " << samples
            << " samples, max abs error = " << cli::format_number(worst)
            << " (tolerance " << cli::format_number(tolerance) << ") "
            << (within ? "within tolerance" : "TOLERANCE EXCEEDED") << '\n';
  return within ? kOk : kToleranceExceeded;
}

int Truncation(const Options &opt)
{
  const Setup setup(opt);
  if (!setup.s.forced)
  {
    throw Failure{kConfigError, "the truncation study needs a forced scenario"};
  }
  std::vector<int> orders;
  try
  {
    orders = !opt.orders.empty() ? cli::parse_orders(opt.orders) : setup.s.orders;
  }
  catch (const cli::ScenarioError &e)
  {
    throw Failure{kConfigError, e.what()};
  }
  if (orders.empty())
  {
    orders = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  }

  const double t = setup.s.grid.t_max;
  const ResponsePtr r = setup.response(t);
  std::vector<std::string> header{"x", "u_exact"};
  for (int n : orders)
  {
    header.push_back("err_" + std::to_string(n));
  }
  CsvTable table(header);
  std::vector<double> worst(orders.size(), 0.0);
  for (double x : setup.xs())
  {
    double exact = 0.0;
    Check(dal_response_eval(r.get(), x, t, DAL_ALL_ORDERS, &exact), kComputeError, "response");
    std::vector<double> row{x, exact};
    for (std::size_t k = 0; k < orders.size(); ++k)
    {
      double truncated = 0.0;
      Check(dal_response_eval(r.get(), x, t, orders[k], &truncated), kComputeError, "response");
      row.push_back(std::abs(truncated - exact));
      worst[k] = std::max(worst[k], row.back());
    }
    table.add_row(row);
  }
  Emit(setup, table, cli::plot_truncation(setup.csv, orders));
  for (std::size_t k = 0; k < orders.size(); ++k)
  {
    std::cerr << "N = " << orders[k] << ": max error " << cli::format_number(worst[k]) << '\n';
  }
  return kOk;
}

int Energy(const Options &opt)
{
  const Setup setup(opt);
  if (setup.s.forced)
  {
    throw Failure{kConfigError, "the energy audit needs an unforced scenario"};
  }
  const ResponsePtr r = setup.response(setup.s.grid.t_max);
  CsvTable table({"t", "energy", "flux"});
  int skipped = 0;
  for (double t : setup.ts())
  {
    double energy = 0.0;
    double flux = 0.0;
    const dal_status status = dal_response_energy(r.get(), t, &energy, &flux);
    if (status == DAL_WAVEFRONT_PROXIMITY)
    {
      ++skipped;
      continue;
    }
    Check(status, kComputeError, "energy");
    table.add_row({t, energy, flux});
  }
  Emit(setup, table, cli::plot_energy(setup.csv));
  if (skipped)
  {
    std::cerr << skipped << " instants skipped: a wavefront is too close to a damper stencil\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Exact d'Alembert-sum solver for a damped bar"};
  app.set_version_flag("--version", std::string(dal_version()));
  app.require_subcommand(1);

  Options opt;
  auto common = [&](CLI::App *cmd) {
    cmd->add_option("--scenario", opt.scenario, "scenario file")->required();
    cmd->add_option("--out", opt.out, "CSV output path (default: scenario, else stdout)");
    cmd->add_option("--plot", opt.plot, "gnuplot script path");
  };
  auto *greens = app.add_subcommand("greens", "Green's function at (x, xi) over the time grid");
  common(greens);
  greens->add_option("--x", opt.x, "observation point [m]");
  greens->add_option("--xi", opt.xi, "source point [m]");
  auto *respond = app.add_subcommand("respond", "displacement field on the grid");
  common(respond);
  auto *compare = app.add_subcommand("compare", "engine against an independent oracle");
  common(compare);
  compare->add_option("--oracle", opt.oracle, "fem or laplace")
      ->check(CLI::IsMember({"fem", "laplace"}));
  compare->add_option("--xi", opt.xi, "source point for the Laplace comparison [m]");
  auto *truncation = app.add_subcommand("truncation", "error of truncated sums at t_max");
  common(truncation);
  truncation->add_option("--orders", opt.orders, "comma-separated truncation orders");
  auto *energy = app.add_subcommand("energy", "energy and predicted flux over the time grid");
  common(energy);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try
  {
    if (greens->parsed())
    {
      return Greens(opt);
    }
    if (respond->parsed())
    {
      return Respond(opt);
    }
    if (compare->parsed())
    {
      return Compare(opt);
    }
    if (truncation->parsed())
    {
      return Truncation(opt);
    }
    return Energy(opt);
  }
  catch (const Failure &f)
  {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kComputeError;
  }
}
