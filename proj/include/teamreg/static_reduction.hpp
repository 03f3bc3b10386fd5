#pragma once

#include <vector>

#include "teamreg/team.hpp"

namespace teamreg {

// Change-of-measure reduction of a dynamic team to an equivalent
// independent static team:
//
//   r(y,u) = sum_x p(x,y,u) * prod_i |Y_i| * W_i(y_i | x, u_1..u_{i-1}) * P(x)
//
// with uniform observation marginals. The defining contract is
// reward_J(reduce(spec), gamma) == reward_J_dynamic(spec, gamma) for every
// profile gamma. Each (y,u) cell is an independent sum over x in ascending
// order; cells are computed in parallel.
StaticTeam reduce(const DynamicTeamSpec& spec, const std::vector<RegularizerSpec>& regs,
                  std::size_t cap = kDefaultTensorCap);

namespace serial {

StaticTeam reduce(const DynamicTeamSpec& spec, const std::vector<RegularizerSpec>& regs,
                  std::size_t cap = kDefaultTensorCap);

}  // namespace serial

}  // namespace teamreg
