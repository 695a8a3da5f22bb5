#pragma once

// Reference designs: the equal-power ladder, and exhaustive log-grid searches
// that certify the closed-form allocator and the joint solve at small L.

#include "harqee/optimizer.hpp"
#include "harqee/types.hpp"

namespace harqee {

enum class BaselineMethod { UniformPower, GridOracle };

struct BaselineSolution {
    Solution solution;
    BaselineMethod method = BaselineMethod::UniformPower;
};

/// Largest L accepted by the grid oracles.
inline constexpr int kOracleMaxRounds = 3;

/// Best energy efficiency with P_1 = ... = P_L. For each (R, alpha) the common
/// power is pinned by phi_L / P^L = alpha; (R, alpha) is searched on a 200 x 200
/// log grid with three zoom rounds and a golden-section polish per coordinate.
BaselineSolution uniform_power_solve(Scheme scheme, const ChannelSpec& spec, const QosSpec& qos);

/// Minimum average power over ladders with phi_L / prod P_k = alpha, found on a
/// log grid over P_1..P_{L-1} spanning three decades either side of the
/// equal-power ladder. `refine_rounds` zooms the grid around the incumbent.
/// Throws std::invalid_argument for L > 3 or resolution < 50.
BaselineSolution grid_oracle_allocate(Scheme scheme, const ChannelSpec& spec, double rate, double alpha,
                                      int resolution = 101, int refine_rounds = 3, unsigned workers = 0);

/// Exhaustive search over (R, alpha) with the closed-form ladder at each point.
BaselineSolution grid_oracle_solve(Scheme scheme, const ChannelSpec& spec, const QosSpec& qos,
                                   int resolution = 101, int refine_rounds = 3, unsigned workers = 0);

}  // namespace harqee
