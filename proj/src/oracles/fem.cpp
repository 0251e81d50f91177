#include "oracles/fem.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "errors.hpp"

namespace dalembert
{

namespace
{

// Symmetric tridiagonal matrix: diag[i], off[i] couples i and i + 1.
struct Tridiagonal
{
  std::vector<double> diag;
  std::vector<double> off;

  std::vector<double> apply(const std::vector<double> &v) const
  {
    const std::size_t n = diag.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
    {
      out[i] = diag[i] * v[i];
      if (i > 0)
      {
        out[i] += off[i - 1] * v[i - 1];
      }
      if (i + 1 < n)
      {
        out[i] += off[i] * v[i + 1];
      }
    }
    return out;
  }
};

// Thomas algorithm, factored once.
class TridiagonalSolver
{
public:
  explicit TridiagonalSolver(const Tridiagonal &m) : off_(m.off), pivot_(m.diag.size())
  {
    pivot_[0] = m.diag[0];
    for (std::size_t i = 1; i < pivot_.size(); ++i)
    {
      pivot_[i] = m.diag[i] - off_[i - 1] * off_[i - 1] / pivot_[i - 1];
    }
  }

  std::vector<double> solve(std::vector<double> rhs) const
  {
    const std::size_t n = rhs.size();
    for (std::size_t i = 1; i < n; ++i)
    {
      rhs[i] -= off_[i - 1] / pivot_[i - 1] * rhs[i - 1];
    }
    rhs[n - 1] /= pivot_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
    {
      rhs[i] = (rhs[i] - off_[i] * rhs[i + 1]) / pivot_[i];
    }
    return rhs;
  }

private:
  std::vector<double> off_;
  std::vector<double> pivot_;
};

double Dot(const std::vector<double> &a, const std::vector<double> &b)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    sum += a[i] * b[i];
  }
  return sum;
}

}  // namespace

FemResult fem_solve(const ValidatedConfig &config, const InitialData &init, const Forcing &forcing,
                    const Grid &grid, const FemOptions &options)
{
  const int ne = options.elements;
  if (ne < 1 || grid.nx < 2 || grid.nt < 1 || !(grid.t_max >= 0.0))
  {
    Fail(ErrorCode::InvalidArgument, "bad FEM mesh or grid");
  }
  const double L = config.length();
  const double c = config.wave_speed();
  const double rho_a = config.rho_a();
  const double h = L / ne;
  const double dt_max = 0.5 * h / c;
  const double dt_req = options.dt > 0.0 ? options.dt : dt_max;
  if (dt_req > dt_max * (1.0 + 1e-12))
  {
    Fail(ErrorCode::InvalidArgument, "FEM time step above 0.5 h / c");
  }

  std::size_t damper_node = 0;
  if (config.has_internal_damper())
  {
    const double pos = config.damper_position() / h;
    if (std::abs(pos - std::round(pos)) > 1e-9)
    {
      Fail(ErrorCode::BadGeometry, "damper position does not fall on a mesh node");
    }
    damper_node = static_cast<std::size_t>(std::lround(pos));
  }

  const std::size_t n = ne + 1;
  Tridiagonal mass{std::vector<double>(n, 0.0), std::vector<double>(n - 1, 0.0)};
  Tridiagonal stiff{std::vector<double>(n, 0.0), std::vector<double>(n - 1, 0.0)};
  const double ea = config.axial_stiffness();
  for (std::size_t e = 0; e + 1 < n; ++e)
  {
    mass.diag[e] += rho_a * h / 3.0;
    mass.diag[e + 1] += rho_a * h / 3.0;
    mass.off[e] += rho_a * h / 6.0;
    stiff.diag[e] += ea / h;
    stiff.diag[e + 1] += ea / h;
    stiff.off[e] -= ea / h;
  }
  std::vector<double> damping(n, 0.0);
  damping[0] += c * rho_a * config.h1();
  damping[n - 1] += c * rho_a * config.h2();
  if (config.has_internal_damper())
  {
    damping[damper_node] += 2.0 * c * rho_a * config.h3();
  }

  std::vector<double> nodes(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    nodes[i] = i + 1 == n ? L : i * h;
  }

  // Consistent nodal load of rhoA * p(x, t).
  const auto *point = std::get_if<PointHarmonic>(&forcing);
  const auto *smooth = std::get_if<SmoothField>(&forcing);
  auto load = [&](double t) {
    std::vector<double> f(n, 0.0);
    if (point)
    {
      const double pos = std::clamp(point->position / h, 0.0, double(ne));
      const std::size_t e = std::min<std::size_t>(static_cast<std::size_t>(pos), ne - 1);
      const double r = pos - e;
      const double force = point->amplitude * std::cos(point->omega * t);
      f[e] += (1.0 - r) * force;
      f[e + 1] += r * force;
    }
    else if (smooth)
    {
      static const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
      static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      for (std::size_t e = 0; e + 1 < n; ++e)
      {
        for (int q = 0; q < 3; ++q)
        {
          const double r = 0.5 * (1.0 + gx[q]);
          const double value = rho_a * smooth->p(nodes[e] + r * h, t) * 0.5 * h * gw[q];
          f[e] += (1.0 - r) * value;
          f[e + 1] += r * value;
        }
      }
    }
    return f;
  };

  std::vector<double> u(n), v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
  {
    u[i] = init.u0 ? init.u0(nodes[i]) : 0.0;
    if (init.v0)
    {
      v[i] = init.v0(nodes[i]);
    }
  }
  auto energy = [&] {
    return 0.5 * Dot(v, mass.apply(v)) + 0.5 * Dot(u, stiff.apply(u));
  };

  std::vector<double> acc;
  {
    std::vector<double> rhs = load(0.0);
    const std::vector<double> ku = stiff.apply(u);
    for (std::size_t i = 0; i < n; ++i)
    {
      rhs[i] -= ku[i] + damping[i] * v[i];
    }
    acc = TridiagonalSolver(mass).solve(rhs);
  }

  FemResult out;
  ResponseField &field = out.field;
  field.config = config.params();
  for (int i = 0; i < grid.nx; ++i)
  {
    field.x.push_back(i + 1 == grid.nx ? L : L * i / (grid.nx - 1));
  }
  for (int j = 0; j < grid.nt; ++j)
  {
    field.t.push_back(grid.nt == 1 || j + 1 == grid.nt ? grid.t_max
                                                       : grid.t_max * j / (grid.nt - 1));
  }
  auto record = [&] {
    for (double x : field.x)
    {
      const double pos = std::clamp(x / h, 0.0, double(ne));
      const std::size_t e = std::min<std::size_t>(static_cast<std::size_t>(pos), ne - 1);
      const double r = pos - e;
      field.u.push_back((1.0 - r) * u[e] + r * u[e + 1]);
    }
    out.energy.push_back(energy());
  };

  const bool conservative = forcing.index() == 0 && config.h1() >= 0.0 && config.h2() >= 0.0 &&
                            config.h3() >= 0.0;
  const double e0 = energy();
  // Round-off floor: energy of the initial displacement oscillating at c / L.
  const double floor = 1e-12 * 0.5 * Dot(u, mass.apply(u)) * (c / L) * (c / L);

  std::optional<TridiagonalSolver> solver;
  double step = 0.0;
  double now = 0.0;
  for (double target : field.t)
  {
    const double span = target - now;
    const int substeps = span > 0.0 ? static_cast<int>(std::ceil(span / dt_req - 1e-9)) : 0;
    for (int k = 0; k < substeps; ++k)
    {
      const double dt = span / substeps;
      if (!solver || std::abs(dt - step) > 1e-14 * dt)
      {
        step = dt;
        Tridiagonal eff = stiff;
        for (std::size_t i = 0; i < n; ++i)
        {
          eff.diag[i] += 2.0 / dt * damping[i] + 4.0 / (dt * dt) * mass.diag[i];
        }
        for (std::size_t i = 0; i + 1 < n; ++i)
        {
          eff.off[i] += 4.0 / (dt * dt) * mass.off[i];
        }
        solver.emplace(eff);
      }
      const double t_next = now + (k + 1) * dt;
      std::vector<double> pred(n);
      for (std::size_t i = 0; i < n; ++i)
      {
        pred[i] = 4.0 / (dt * dt) * u[i] + 4.0 / dt * v[i] + acc[i];
      }
      std::vector<double> rhs = load(t_next);
      const std::vector<double> mp = mass.apply(pred);
      for (std::size_t i = 0; i < n; ++i)
      {
        rhs[i] += mp[i] + damping[i] * (2.0 / dt * u[i] + v[i]);
      }
      const std::vector<double> u_next = solver->solve(rhs);
      for (std::size_t i = 0; i < n; ++i)
      {
        const double a_next = 4.0 / (dt * dt) * (u_next[i] - u[i]) - 4.0 / dt * v[i] - acc[i];
        v[i] += 0.5 * dt * (acc[i] + a_next);
        acc[i] = a_next;
        u[i] = u_next[i];
      }
      if (conservative && energy() > e0 * (1.0 + 1e-6) + floor)
      {
        Fail(ErrorCode::Unstable, "discrete energy grew in a dissipative problem");
      }
    }
    now = target;
    record();
  }
  return out;
}

}  // namespace dalembert
