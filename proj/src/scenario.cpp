#include "sdm/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace sdm {

std::vector<std::string> validate_scenario(const Scenario& scenario) {
    std::vector<std::string> problems;
    if (scenario.devices.empty())
        problems.push_back("scenario has no devices");

    std::set<std::string> device_ids;
    for (const auto& dev : scenario.devices) {
        if (!device_ids.insert(dev.id).second)
            problems.push_back("duplicate device id: " + dev.id);
        if (dev.battery < 0.0)
            problems.push_back("device " + dev.id + ": negative battery");
        if (dev.overhead_energy < 0.0)
            problems.push_back("device " + dev.id + ": negative overhead energy");
        for (const auto& [type, cap] : dev.quality_cap)
            if (!is_quality_level(cap))
                problems.push_back("device " + dev.id + ": quality cap " + std::to_string(cap) +
                                   " for type " + std::to_string(type) + " is not on the 10..100 ladder");
        for (const auto& [type, price] : dev.unit_price)
            if (!(price > 0.0))
                problems.push_back("device " + dev.id + ": non-positive price for type " +
                                   std::to_string(type));
        for (const auto& [type, energy] : dev.per_sample_energy) {
            if (!(energy > 0.0))
                problems.push_back("device " + dev.id + ": non-positive per-sample energy for type " +
                                   std::to_string(type));
            if (dev.unit_price.count(type) == 0)
                problems.push_back("device " + dev.id + ": type " + std::to_string(type) +
                                   " has energy but no price");
            if (dev.quality_cap.count(type) == 0)
                problems.push_back("device " + dev.id + ": type " + std::to_string(type) +
                                   " has energy but no quality cap");
        }
    }

    std::set<std::pair<std::string, DataTypeId>> pairs;
    for (const auto& dem : scenario.demands) {
        if (!(dem.duration_hours > 0.0))
            problems.push_back("demand " + dem.key() + ": duration must be positive");
        if (!(dem.interval_hours > 0.0))
            problems.push_back("demand " + dem.key() + ": sampling interval must be positive");
        if (!is_quality_level(dem.quality))
            problems.push_back("demand " + dem.key() + ": quality " + std::to_string(dem.quality) +
                               " is not on the 10..100 ladder");
        if (!pairs.insert({dem.buyer, dem.data_type}).second)
            problems.push_back("duplicate (buyer, type) demand: " + dem.key());
    }
    return problems;
}

namespace {

template <typename V>
std::map<DataTypeId, V> map_from_json(const nlohmann::json& j) {
    std::map<DataTypeId, V> out;
    for (auto it = j.begin(); it != j.end(); ++it)
        out[std::stoi(it.key())] = it.value().get<V>();
    return out;
}

template <typename V>
nlohmann::json map_to_json(const std::map<DataTypeId, V>& m) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = v;
    return j;
}

} // namespace

void to_json(nlohmann::json& j, const Device& d) {
    j = nlohmann::json{{"id", d.id},
                       {"battery", d.battery},
                       {"quality_cap", map_to_json(d.quality_cap)},
                       {"unit_price", map_to_json(d.unit_price)},
                       {"per_sample_energy", map_to_json(d.per_sample_energy)},
                       {"overhead_energy", d.overhead_energy}};
}

void from_json(const nlohmann::json& j, Device& d) {
    d.id = j.at("id").get<std::string>();
    d.battery = j.at("battery").get<double>();
    d.quality_cap = map_from_json<int>(j.at("quality_cap"));
    d.unit_price = map_from_json<double>(j.at("unit_price"));
    d.per_sample_energy = map_from_json<double>(j.at("per_sample_energy"));
    d.overhead_energy = j.at("overhead_energy").get<double>();
}

void to_json(nlohmann::json& j, const Demand& d) {
    j = nlohmann::json{{"buyer", d.buyer},
                       {"data_type", d.data_type},
                       {"duration_hours", d.duration_hours},
                       {"interval_hours", d.interval_hours},
                       {"quality", d.quality}};
}

void from_json(const nlohmann::json& j, Demand& d) {
    d.buyer = j.at("buyer").get<std::string>();
    d.data_type = j.at("data_type").get<DataTypeId>();
    d.duration_hours = j.at("duration_hours").get<double>();
    d.interval_hours = j.at("interval_hours").get<double>();
    d.quality = j.at("quality").get<int>();
}

void to_json(nlohmann::json& j, const Scenario& s) {
    j = nlohmann::json{{"devices", s.devices}, {"demands", s.demands}};
}

void from_json(const nlohmann::json& j, Scenario& s) {
    s.devices = j.at("devices").get<std::vector<Device>>();
    s.demands = j.at("demands").get<std::vector<Demand>>();
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("scenario file " + path + " is not valid JSON: " + e.what());
    }
    Scenario s = j.get<Scenario>();
    const auto problems = validate_scenario(s);
    if (!problems.empty()) {
        std::ostringstream msg;
        msg << "scenario file " << path << " failed validation:";
        for (const auto& p : problems) msg << "\n  - " << p;
        throw std::runtime_error(msg.str());
    }
    return s;
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write scenario file: " + path);
    out << nlohmann::json(scenario).dump(2) << "\n";
}

} // namespace sdm
