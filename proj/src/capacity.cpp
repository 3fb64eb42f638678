// SPDX-License-Identifier: Apache-2.0
#include "capa/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace capa
{
    WaterfillResult water_fill(std::span<const double> gains, double total_power)
    {
        if (!std::isfinite(total_power) || total_power <= 0.0)
            throw std::domain_error("water_fill: total power must be positive");
        for (double g : gains)
            if (!std::isfinite(g) || g < 0.0)
                throw std::domain_error("water_fill: gains must be finite and nonnegative");

        std::vector<std::size_t> order(gains.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
                         { return gains[a] > gains[b]; });

        const auto positive = static_cast<std::size_t>(std::count_if(gains.begin(), gains.end(), [](double g)
                                                                     { return g > 0.0; }));
        if (positive == 0)
            throw std::domain_error("water_fill: all gains are zero");

        // The active set is always a prefix of the sorted gains. Channel k joins when the
        // water level of the first k channels clears its inverse gain.
        std::size_t active = 1;
        double inv_sum = 1.0 / gains[order[0]];
        double mu = total_power + inv_sum;
        for (std::size_t k = 2; k <= positive; ++k)
        {
            const double inv = 1.0 / gains[order[k - 1]];
            const double mu_k = (total_power + inv_sum + inv) / static_cast<double>(k);
            if (!(mu_k > inv))
                break;
            active = k;
            inv_sum += inv;
            mu = mu_k;
        }

        WaterfillResult res;
        res.water_level = mu;
        res.allocations.assign(gains.size(), 0.0);
        for (std::size_t k = 0; k < active; ++k)
        {
            const std::size_t i = order[k];
            res.allocations[i] = mu - 1.0 / gains[i];
        }
        for (std::size_t i = 0; i < gains.size(); ++i)
            if (res.allocations[i] > 0.0)
                res.capacity_bits += std::log2(1.0 + gains[i] * res.allocations[i]);
        return res;
    }
}
