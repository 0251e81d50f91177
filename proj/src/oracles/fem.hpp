#ifndef DALEMBERT_ORACLES_FEM_HPP
#define DALEMBERT_ORACLES_FEM_HPP

#include <vector>

#include "response.hpp"

namespace dalembert
{

//
// Linear finite elements with consistent mass on a uniform mesh, the internal
// damper on a node, and nodal dashpots (c rhoA h1 at x = 0, c rhoA h2 at x = L,
// 2 c rhoA h3 at x = a). Integrated with Newmark average acceleration.
//
struct FemOptions
{
  int elements = 200;
  double dt = 0.0;  // 0 selects 0.5 * element length / c
};

struct FemResult
{
  ResponseField field;          // nodal values interpolated linearly onto the grid
  std::vector<double> energy;   // discrete energy at each grid time
};

// Throws Error(Unstable) if the discrete energy of an unforced problem with all
// h >= 0 grows by more than 1e-6 relative.
FemResult fem_solve(const ValidatedConfig &config, const InitialData &init, const Forcing &forcing,
                    const Grid &grid, const FemOptions &options = {});

}  // namespace dalembert

#endif  // DALEMBERT_ORACLES_FEM_HPP
