#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "dalembert/dalembert.h"

namespace
{

dal_bar_params Params(double h1, double h2, double h3)
{
  dal_bar_params p{};
  p.length = 1.8;
  p.wave_speed = 1.5;
  p.damper_position = 0.9;
  p.has_damper_position = h3 != 0.0;
  p.h1 = h1;
  p.h2 = h2;
  p.h3 = h3;
  return p;
}

struct Bar
{
  explicit Bar(const dal_bar_params &p) { status = dal_bar_create(&p, &handle); }
  ~Bar() { dal_bar_destroy(handle); }
  dal_bar *handle = nullptr;
  dal_status status;
};

}  // namespace

TEST_CASE("capi: version and status names")
{
  CHECK(std::strlen(dal_version()) > 0);
  CHECK(std::string(dal_status_name(DAL_OK)) == "ok");
  CHECK(std::string(dal_status_name(DAL_OUT_OF_HORIZON)) == "out of horizon");
  CHECK(std::string(dal_status_name(static_cast<dal_status>(99))) == "unknown status");
}

TEST_CASE("capi: bar validation maps onto status codes")
{
  const Bar critical(Params(-1.0, 0.5, 0.0));
  CHECK(critical.status == DAL_CRITICAL_PARAMETER);
  CHECK(critical.handle == nullptr);
  CHECK(std::string(dal_last_error_message()).find("h1") != std::string::npos);

  dal_bar_params p = Params(0.5, 0.7, 0.6);
  p.damper_position = 2.0;
  CHECK(Bar(p).status == DAL_BAD_GEOMETRY);
  CHECK(dal_bar_create(nullptr, nullptr) == DAL_INVALID_ARGUMENT);

  const Bar ok(Params(0.5, 0.7, 0.6));
  CHECK(ok.status == DAL_OK);
  CHECK(std::string(dal_last_error_message()).empty());
}

TEST_CASE("capi: denominator and buffer sizes")
{
  const Bar bar(Params(0.5, 0.7, 0.6));
  double b[3];
  double alpha[3];
  size_t count = 0;
  CHECK(dal_bar_denominator(bar.handle, b, alpha, 1, &count) == DAL_BUFFER_TOO_SMALL);
  CHECK(count == 3);
  CHECK(dal_bar_denominator(bar.handle, b, alpha, 3, &count) == DAL_OK);
  CHECK(b[0] == doctest::Approx(0.125));
  CHECK(alpha[2] == doctest::Approx(2.4));
  CHECK(dal_reflection_coefficient(0.5) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("capi: Green's function")
{
  const Bar bar(Params(0.5, 0.7, 0.6));
  dal_greens *g = nullptr;
  REQUIRE(dal_greens_create(bar.handle, 6.0, DAL_PATH_GENERAL, &g) == DAL_OK);
  double value = 0.0;
  CHECK(dal_greens_eval(g, 0.3, 1.2, 2.7, DAL_ALL_ORDERS, &value) == DAL_OK);
  CHECK(value == doctest::Approx(0.5999945934256099).epsilon(1e-12));
  CHECK(dal_greens_eval(g, 0.3, 1.2, 7.0, DAL_ALL_ORDERS, &value) == DAL_OUT_OF_HORIZON);
  CHECK(dal_greens_eval(g, 0.3, 2.2, 1.0, DAL_ALL_ORDERS, &value) == DAL_INVALID_ARGUMENT);

  int orders = 0;
  int max_order = 0;
  CHECK(dal_greens_orders(g, 1.5, &orders, &max_order) == DAL_OK);
  CHECK(orders == max_order + 1);

  size_t count = 0;
  CHECK(dal_greens_step_times(g, 0.3, 1.2, 2.7, nullptr, nullptr, 0, &count) ==
        DAL_BUFFER_TOO_SMALL);
  std::vector<double> times(count);
  std::vector<double> jumps(count);
  CHECK(dal_greens_step_times(g, 0.3, 1.2, 2.7, times.data(), jumps.data(), count, &count) ==
        DAL_OK);
  double sum = 0.0;
  for (double j : jumps)
  {
    sum += j;
  }
  CHECK(sum == doctest::Approx(value).epsilon(1e-12));
  dal_greens_destroy(g);

  dal_greens *wrong = nullptr;
  CHECK(dal_greens_create(bar.handle, 6.0, DAL_PATH_RIGHT_TRANSPARENT, &wrong) ==
        DAL_INVALID_ARGUMENT);
  CHECK(wrong == nullptr);
}

TEST_CASE("capi: response, FEM and Laplace agree")
{
  const Bar bar(Params(0.5, 1.0, 0.7));
  dal_gaussian pulse{0.45, 0.1, 1.0};
  dal_problem problem{};
  problem.u0 = dal_gaussian_eval;
  problem.u0_user = &pulse;

  dal_response *r = nullptr;
  REQUIRE(dal_response_create(bar.handle, &problem, 1.5, &r) == DAL_OK);
  const dal_grid grid{16, 8, 1.5};
  std::vector<double> exact(16 * 8);
  std::vector<int> orders(8);
  CHECK(dal_response_field(r, &grid, DAL_ALL_ORDERS, exact.data(), orders.data()) == DAL_OK);
  CHECK(orders.back() == 2);
  double u = 0.0;
  CHECK(dal_response_eval(r, 0.0, 0.0, DAL_ALL_ORDERS, &u) == DAL_OK);
  CHECK(u == doctest::Approx(dal_gaussian_eval(0.0, &pulse)));
  CHECK(dal_response_eval(r, 0.0, 2.0, DAL_ALL_ORDERS, &u) == DAL_OUT_OF_HORIZON);

  std::vector<double> fem(16 * 8);
  std::vector<double> energy(8);
  CHECK(dal_fem_solve(bar.handle, &problem, &grid, 200, 0.0, fem.data(), energy.data()) == DAL_OK);
  for (std::size_t k = 0; k < fem.size(); ++k)
  {
    CHECK(std::abs(fem[k] - exact[k]) <= 5e-3);
  }
  CHECK(energy.back() < energy.front());
  CHECK(dal_fem_solve(bar.handle, &problem, &grid, 7, 0.0, fem.data(), nullptr) ==
        DAL_BAD_GEOMETRY);

  double e = 0.0;
  double flux = 0.0;
  CHECK(dal_response_energy(r, 0.5, &e, &flux) == DAL_OK);
  CHECK(flux < 0.0);
  dal_response_destroy(r);

  dal_greens *g = nullptr;
  REQUIRE(dal_greens_create(bar.handle, 2.0, DAL_PATH_RIGHT_TRANSPARENT, &g) == DAL_OK);
  double lap = 0.0;
  double gamma = 0.0;
  CHECK(dal_laplace_greens(bar.handle, 0.5, 0.8, 1.1, 0, &lap) == DAL_OK);
  CHECK(dal_greens_eval(g, 0.5, 0.8, 1.1, DAL_ALL_ORDERS, &gamma) == DAL_OK);
  CHECK(std::abs(lap - gamma) <= 1e-7);
  dal_greens_destroy(g);
  CHECK(dal_laplace_greens(bar.handle, 0.5, 0.9, 0.0, 0, &lap) == DAL_INVALID_ARGUMENT);
  CHECK(dal_laplace_greens(bar.handle, 0.5, 0.8, 0.3, 100, &lap) == DAL_NO_CONVERGENCE);
}

TEST_CASE("capi: point force outside the bar is rejected")
{
  const Bar bar(Params(0.9, 0.9, 0.6));
  dal_problem problem{};
  problem.forcing = DAL_FORCING_POINT_HARMONIC;
  problem.force_position = 2.5;
  problem.force_amplitude = 1.0;
  problem.force_omega = 4.0;
  dal_response *r = nullptr;
  CHECK(dal_response_create(bar.handle, &problem, 10.0, &r) == DAL_INVALID_ARGUMENT);
  CHECK(r == nullptr);
  CHECK(dal_response_create(bar.handle, nullptr, 10.0, &r) == DAL_INVALID_ARGUMENT);
}
