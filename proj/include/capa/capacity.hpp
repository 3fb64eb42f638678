// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace capa
{
    struct WaterfillResult
    {
        std::vector<double> allocations; // same order as the input gains
        double water_level = 0.0;        // mu
        double capacity_bits = 0.0;      // sum log2(1 + g_i p_i)
    };

    // Water-filling over parallel channels with gains g_i (signal gain over noise):
    // p_i = max(0, mu - 1/g_i), sum p_i = total_power. Solved exactly by growing the
    // active set over gains sorted in descending order.
    // Throws std::domain_error if every gain is zero, any gain is negative or non-finite,
    // or total_power is not positive.
    WaterfillResult water_fill(std::span<const double> gains, double total_power);
}
