#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sdm {

/// Dense data-type index, unique within a scenario.
using DataTypeId = int;

/// Quality levels form a discrete ladder {10, 20, ..., 100}.
inline constexpr int kQualityMin = 10;
inline constexpr int kQualityMax = 100;
inline constexpr int kQualityStep = 10;

inline bool is_quality_level(int q) {
    return q >= kQualityMin && q <= kQualityMax && q % kQualityStep == 0;
}

/// A seller's battery-powered sensor. Battery and energies share one
/// abstract energy unit (mAh-equivalent in scenarios); currency is abstract.
struct Device {
    std::string id;
    double battery = 0.0;
    std::map<DataTypeId, int> quality_cap;         // highest quality level met per type
    std::map<DataTypeId, double> unit_price;       // currency per sample, > 0
    std::map<DataTypeId, double> per_sample_energy; // sensing energy per sample, > 0
    double overhead_energy = 0.0;                   // processing+transmission per sample

    bool offers(DataTypeId type) const { return per_sample_energy.count(type) > 0; }
};

/// One (buyer, data-type) request. Durations and intervals are in hours.
struct Demand {
    std::string buyer;
    DataTypeId data_type = 0;
    double duration_hours = 0.0;
    double interval_hours = 0.0;
    int quality = kQualityMin;

    std::string key() const { return buyer + "/" + std::to_string(data_type); }
};

/// The selected assignment plus revenue and residual batteries.
struct AllocationPlan {
    std::vector<std::pair<std::string, std::string>> assignments; // (device_id, demand_key)
    double revenue = 0.0;
    std::map<std::string, double> residual_battery;
};

/// Number of samples needed to cover the demanded duration: one sample per
/// sampling interval, with a partial final interval still requiring a sample.
/// A relative slack of 1e-12 absorbs floating-point division noise so exact
/// divisions do not round up.
long long sample_count(const Demand& demand);

/// Total energy a device spends serving a demand:
/// samples x (per-sample sensing + per-sample overhead).
double energy_cost(const Device& device, const Demand& demand);

/// Revenue the device earns for a demand: samples x unit price.
double demand_revenue(const Device& device, const Demand& demand);

} // namespace sdm
