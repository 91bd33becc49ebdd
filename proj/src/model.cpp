#include "sdm/model.hpp"

#include <cmath>

namespace sdm {

long long sample_count(const Demand& demand) {
    if (!(demand.duration_hours > 0.0))
        throw std::invalid_argument("sample_count: duration must be positive");
    if (!(demand.interval_hours > 0.0))
        throw std::invalid_argument("sample_count: sampling interval must be positive");
    const double ratio = demand.duration_hours / demand.interval_hours;
    const auto n = static_cast<long long>(std::ceil(ratio * (1.0 - 1e-12)));
    return n < 1 ? 1 : n;
}

double energy_cost(const Device& device, const Demand& demand) {
    const auto it = device.per_sample_energy.find(demand.data_type);
    if (it == device.per_sample_energy.end())
        throw std::invalid_argument("energy_cost: device " + device.id +
                                    " does not offer data type " + std::to_string(demand.data_type));
    return static_cast<double>(sample_count(demand)) * (it->second + device.overhead_energy);
}

double demand_revenue(const Device& device, const Demand& demand) {
    const auto it = device.unit_price.find(demand.data_type);
    if (it == device.unit_price.end())
        throw std::invalid_argument("demand_revenue: device " + device.id +
                                    " does not offer data type " + std::to_string(demand.data_type));
    return static_cast<double>(sample_count(demand)) * it->second;
}

} // namespace sdm
