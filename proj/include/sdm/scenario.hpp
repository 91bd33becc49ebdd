#pragma once

#include "sdm/model.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace sdm {

/// A full problem instance: the seller's devices plus the candidate demand
/// list (one entry per (buyer, type) pair).
struct Scenario {
    std::vector<Device> devices;
    std::vector<Demand> demands;
};

/// Structural validation. Returns one message per problem; empty means valid.
/// Checks: non-empty device list, positive batteries/prices/energies, quality
/// ladder membership, (buyer, type) uniqueness, positive durations/intervals.
std::vector<std::string> validate_scenario(const Scenario& scenario);

void to_json(nlohmann::json& j, const Device& d);
void from_json(const nlohmann::json& j, Device& d);
void to_json(nlohmann::json& j, const Demand& d);
void from_json(const nlohmann::json& j, Demand& d);
void to_json(nlohmann::json& j, const Scenario& s);
void from_json(const nlohmann::json& j, Scenario& s);

/// Load a scenario from a JSON file; throws std::runtime_error with the
/// offending path or validation message on failure.
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

} // namespace sdm
