#pragma once

// Closed-form minimum-average-power ladder for a given rate and target outage.
//
// With the asymptotic model p_out,l = phi_l / (P_1 ... P_l), the ladder that
// minimises sum_l p_out,l-1 P_l subject to p_out,L = alpha has a KKT solution
// in which each P_l is a geometric mean of its successors. All of it is
// evaluated on r_k = ln(phi_k / phi_{k-1}).

#include "harqee/types.hpp"

#include <vector>

namespace harqee {

struct AllocationResult {
    PowerLadder ladder;
    double avg_power = 0.0;  // closed-form minimum average power
    double alpha = 0.0;
};

/// Optimal ladder and minimum average power. Requires R > 0 and 0 < alpha < 1.
AllocationResult allocate(Scheme scheme, const ChannelSpec& spec, double rate, double alpha);

/// ln of the minimum average power without building the ladder.
double log_min_avg_power(Scheme scheme, const ChannelSpec& spec, double rate, double alpha);

/// Asymptotic outage after each round: result[l] = p_out,l for l = 0..L, with p_out,0 = 1.
std::vector<double> asymptotic_outage(Scheme scheme, const ChannelSpec& spec, const PowerLadder& ladder,
                                      double rate);

/// sum_{l=1}^{L} p_out,l-1 * P_l under the asymptotic outage model.
/// Every power must be strictly positive.
double avg_power_of_ladder(Scheme scheme, const ChannelSpec& spec, const PowerLadder& ladder, double rate);

}  // namespace harqee
