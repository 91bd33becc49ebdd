#include "sdm/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace sdm {

double normalized_revenue(const Device& device, const Demand& demand) {
    const double energy = energy_cost(device, demand);
    return demand_revenue(device, demand) / energy;
}

std::string to_string(RejectReason r) {
    switch (r) {
        case RejectReason::battery: return "battery";
        case RejectReason::quality: return "quality";
        case RejectReason::dominated: return "dominated";
    }
    return "unknown";
}

namespace {

struct DemandView {
    const Demand* demand = nullptr;
    std::size_t index = 0;       // position in scenario.demands
    long long samples = 0;
    double best_nr = 0.0;        // over quality-feasible devices
    double best_revenue = 0.0;
    bool any_feasible = false;   // some device passes the quality cap
    std::vector<int> feasible_devices; // scenario device indices, quality-feasible
};

bool quality_ok(const Device& dev, const Demand& dem) {
    const auto it = dev.quality_cap.find(dem.data_type);
    return it != dev.quality_cap.end() && dev.offers(dem.data_type) && dem.quality <= it->second;
}

std::vector<DemandView> rank_demands(const Scenario& scenario) {
    std::vector<DemandView> views;
    views.reserve(scenario.demands.size());
    for (std::size_t i = 0; i < scenario.demands.size(); ++i) {
        const Demand& dem = scenario.demands[i];
        DemandView v;
        v.demand = &dem;
        v.index = i;
        v.samples = sample_count(dem);
        for (std::size_t d = 0; d < scenario.devices.size(); ++d) {
            const Device& dev = scenario.devices[d];
            if (!dev.offers(dem.data_type)) continue;
            const double nr = normalized_revenue(dev, dem);
            const double rev = demand_revenue(dev, dem);
            const bool q = quality_ok(dev, dem);
            if (q) {
                if (!v.any_feasible || nr > v.best_nr) v.best_nr = nr;
                if (!v.any_feasible || rev > v.best_revenue) v.best_revenue = rev;
                v.any_feasible = true;
                v.feasible_devices.push_back(static_cast<int>(d));
            } else if (!v.any_feasible) {
                // Keeps the ordering deterministic for demands no device can
                // serve; they are rejected during assignment regardless.
                v.best_nr = std::max(v.best_nr, nr);
                v.best_revenue = std::max(v.best_revenue, rev);
            }
        }
        views.push_back(std::move(v));
    }
    std::sort(views.begin(), views.end(), [](const DemandView& a, const DemandView& b) {
        if (a.best_nr != b.best_nr) return a.best_nr > b.best_nr;
        if (a.best_revenue != b.best_revenue) return a.best_revenue > b.best_revenue;
        if (a.demand->buyer != b.demand->buyer) return a.demand->buyer < b.demand->buyer;
        return a.demand->data_type < b.demand->data_type;
    });
    return views;
}

std::vector<int> battery_order(const Scenario& scenario) {
    std::vector<int> order(scenario.devices.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return scenario.devices[a].battery < scenario.devices[b].battery;
    });
    return order;
}

void throw_on_invalid(const Scenario& scenario) {
    const auto problems = validate_scenario(scenario);
    if (!problems.empty())
        throw std::invalid_argument("invalid scenario: " + problems.front());
}

} // namespace

SolveReport solve_greedy(const Scenario& scenario, const GreedyOptions& options) {
    throw_on_invalid(scenario);
    SolveReport report;
    std::vector<double> residual(scenario.devices.size());
    for (std::size_t d = 0; d < scenario.devices.size(); ++d)
        residual[d] = scenario.devices[d].battery;

    std::vector<int> order = battery_order(scenario);

    for (const DemandView& v : rank_demands(scenario)) {
        if (options.device_order == DeviceOrder::residual_battery) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return residual[a] < residual[b]; });
        }
        if (!v.any_feasible) {
            report.rejected.push_back({v.demand->key(), RejectReason::quality});
            continue;
        }
        bool placed = false;
        for (int d : order) {
            const Device& dev = scenario.devices[d];
            if (!quality_ok(dev, *v.demand)) continue;
            const double energy = energy_cost(dev, *v.demand);
            if (energy <= residual[d]) {
                residual[d] -= energy;
                report.plan.assignments.emplace_back(dev.id, v.demand->key());
                report.plan.revenue += demand_revenue(dev, *v.demand);
                placed = true;
                break;
            }
        }
        if (!placed)
            report.rejected.push_back({v.demand->key(), RejectReason::battery});
    }

    for (std::size_t d = 0; d < scenario.devices.size(); ++d)
        report.plan.residual_battery[scenario.devices[d].id] = residual[d];
    report.selected_count = static_cast<int>(report.plan.assignments.size());
    return report;
}

namespace {

// Shared state for the exact search. Choices per demand are encoded as
// -1 (unassigned) or a device index.
struct ExactSearch {
    const Scenario& scenario;
    std::vector<DemandView> views;               // sorted by greedy key
    std::vector<std::vector<double>> energy;     // [view][device] or inf
    std::vector<std::vector<double>> revenue;    // [view][device] or -inf
    std::vector<double> best_rev_per_demand;     // max revenue over feasible devices
    std::vector<double> min_energy_per_demand;   // min energy over feasible devices
    std::vector<double> density_suffix_sorted;   // scratch for bound
    std::vector<int> choice;
    std::vector<int> best_choice;
    double best_value = -1.0;
    std::chrono::steady_clock::time_point deadline;
    bool timed_out = false;
    long long nodes = 0;

    explicit ExactSearch(const Scenario& s) : scenario(s) {}

    // Pooled fractional bound: remaining demands, each at its best revenue
    // and least energy, fill the summed residual capacity in density order.
    double upper_bound(std::size_t next, double pooled_residual, double current) const {
        struct Item { double density; double rev; double energy; };
        std::vector<Item> items;
        items.reserve(views.size() - next);
        for (std::size_t i = next; i < views.size(); ++i) {
            if (!views[i].any_feasible) continue;
            items.push_back({best_rev_per_demand[i] / min_energy_per_demand[i],
                             best_rev_per_demand[i], min_energy_per_demand[i]});
        }
        std::sort(items.begin(), items.end(),
                  [](const Item& a, const Item& b) { return a.density > b.density; });
        double bound = current;
        double room = pooled_residual;
        for (const Item& it : items) {
            if (room <= 0.0) break;
            if (it.energy <= room) {
                bound += it.rev;
                room -= it.energy;
            } else {
                bound += it.density * room;
                room = 0.0;
            }
        }
        return bound;
    }

    void dfs(std::size_t next, std::vector<double>& residual, double current) {
        if (timed_out) return;
        if ((++nodes & 0x3FF) == 0 && std::chrono::steady_clock::now() > deadline) {
            timed_out = true;
            return;
        }
        if (next == views.size()) {
            if (current > best_value + 1e-12) {
                best_value = current;
                best_choice = choice;
            }
            return;
        }
        const double pooled = std::accumulate(residual.begin(), residual.end(), 0.0);
        if (upper_bound(next, pooled, current) <= best_value + 1e-9) return;

        const DemandView& v = views[next];
        for (int d : v.feasible_devices) {
            if (energy[next][d] <= residual[d]) {
                choice[next] = d;
                residual[d] -= energy[next][d];
                dfs(next + 1, residual, current + revenue[next][d]);
                residual[d] += energy[next][d];
            }
        }
        choice[next] = -1;
        dfs(next + 1, residual, current);
    }
};

} // namespace

SolveReport solve_exact(const Scenario& scenario, const SolveLimits& limits) {
    throw_on_invalid(scenario);
    const int n = static_cast<int>(scenario.demands.size());
    const int D = static_cast<int>(scenario.devices.size());
    if (n > limits.max_demands)
        throw std::invalid_argument("solve_exact: demand count " + std::to_string(n) +
                                    " exceeds limit " + std::to_string(limits.max_demands));
    if (D > limits.max_devices)
        throw std::invalid_argument("solve_exact: device count " + std::to_string(D) +
                                    " exceeds limit " + std::to_string(limits.max_devices));

    ExactSearch search(scenario);
    search.views = rank_demands(scenario);
    search.energy.assign(search.views.size(), std::vector<double>(D, std::numeric_limits<double>::infinity()));
    search.revenue.assign(search.views.size(), std::vector<double>(D, 0.0));
    search.best_rev_per_demand.assign(search.views.size(), 0.0);
    search.min_energy_per_demand.assign(search.views.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < search.views.size(); ++i) {
        for (int d : search.views[i].feasible_devices) {
            const Device& dev = scenario.devices[d];
            search.energy[i][d] = energy_cost(dev, *search.views[i].demand);
            search.revenue[i][d] = demand_revenue(dev, *search.views[i].demand);
            search.best_rev_per_demand[i] = std::max(search.best_rev_per_demand[i], search.revenue[i][d]);
            search.min_energy_per_demand[i] = std::min(search.min_energy_per_demand[i], search.energy[i][d]);
        }
    }
    search.choice.assign(search.views.size(), -1);
    search.best_choice = search.choice;
    search.best_value = 0.0;
    search.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(limits.timeout_seconds));

    std::vector<double> residual(D);
    for (int d = 0; d < D; ++d) residual[d] = scenario.devices[d].battery;

    if (n < 12) {
        // Exhaustive pass over all assignment vectors, depth-first with the
        // same choice encoding but no bound pruning.
        struct Enumerate {
            ExactSearch& s;
            void run(std::size_t next, std::vector<double>& res, double current) {
                if (s.timed_out) return;
                if ((++s.nodes & 0xFFF) == 0 && std::chrono::steady_clock::now() > s.deadline) {
                    s.timed_out = true;
                    return;
                }
                if (next == s.views.size()) {
                    if (current > s.best_value + 1e-12) {
                        s.best_value = current;
                        s.best_choice = s.choice;
                    }
                    return;
                }
                const DemandView& v = s.views[next];
                for (int d : v.feasible_devices) {
                    if (s.energy[next][d] <= res[d]) {
                        s.choice[next] = d;
                        res[d] -= s.energy[next][d];
                        run(next + 1, res, current + s.revenue[next][d]);
                        res[d] += s.energy[next][d];
                    }
                }
                s.choice[next] = -1;
                run(next + 1, res, current);
            }
        };
        Enumerate{search}.run(0, residual, 0.0);
    } else {
        search.dfs(0, residual, 0.0);
    }

    SolveReport report;
    report.optimal = !search.timed_out;
    std::vector<double> final_residual(D);
    for (int d = 0; d < D; ++d) final_residual[d] = scenario.devices[d].battery;
    for (std::size_t i = 0; i < search.views.size(); ++i) {
        const DemandView& v = search.views[i];
        const int d = search.best_choice[i];
        if (d >= 0) {
            report.plan.assignments.emplace_back(scenario.devices[d].id, v.demand->key());
            report.plan.revenue += search.revenue[i][d];
            final_residual[d] -= search.energy[i][d];
        } else if (!v.any_feasible) {
            report.rejected.push_back({v.demand->key(), RejectReason::quality});
        } else {
            // Feasible for some device in isolation but left out of the
            // optimum (or nothing had room): classify by standalone fit.
            bool fits_alone = false;
            for (int fd : v.feasible_devices)
                if (search.energy[i][fd] <= scenario.devices[fd].battery) { fits_alone = true; break; }
            report.rejected.push_back({v.demand->key(),
                                       fits_alone ? RejectReason::dominated : RejectReason::battery});
        }
    }
    for (int d = 0; d < D; ++d)
        report.plan.residual_battery[scenario.devices[d].id] = final_residual[d];
    report.selected_count = static_cast<int>(report.plan.assignments.size());
    return report;
}

std::vector<std::string> validate_plan(const Scenario& scenario, const AllocationPlan& plan) {
    std::vector<std::string> violations;
    std::unordered_map<std::string, const Device*> devices;
    for (const auto& dev : scenario.devices) devices[dev.id] = &dev;
    std::unordered_map<std::string, const Demand*> demands;
    for (const auto& dem : scenario.demands) demands[dem.key()] = &dem;

    std::unordered_map<std::string, int> demand_uses;
    std::unordered_map<std::string, double> consumed;
    double revenue = 0.0;

    for (const auto& [device_id, demand_key] : plan.assignments) {
        const auto dev_it = devices.find(device_id);
        if (dev_it == devices.end()) {
            violations.push_back("assignment references unknown device: " + device_id);
            continue;
        }
        const auto dem_it = demands.find(demand_key);
        if (dem_it == demands.end()) {
            violations.push_back("assignment references unknown demand: " + demand_key);
            continue;
        }
        const Device& dev = *dev_it->second;
        const Demand& dem = *dem_it->second;
        if (++demand_uses[demand_key] > 1)
            violations.push_back("demand " + demand_key + " assigned to more than one device");
        if (!dev.offers(dem.data_type)) {
            violations.push_back("device " + device_id + " does not offer type " +
                                 std::to_string(dem.data_type));
            continue;
        }
        const auto cap_it = dev.quality_cap.find(dem.data_type);
        if (cap_it == dev.quality_cap.end() || dem.quality > cap_it->second)
            violations.push_back("quality constraint violated: demand " + demand_key +
                                 " (q=" + std::to_string(dem.quality) + ") on device " + device_id);
        consumed[device_id] += energy_cost(dev, dem);
        revenue += demand_revenue(dev, dem);
    }

    for (const auto& dev : scenario.devices) {
        const double used = consumed.count(dev.id) ? consumed[dev.id] : 0.0;
        const double slack = 1e-9 * std::max(1.0, dev.battery);
        if (used > dev.battery + slack)
            violations.push_back("battery constraint violated on device " + dev.id + ": " +
                                 std::to_string(used) + " > " + std::to_string(dev.battery));
        const auto res_it = plan.residual_battery.find(dev.id);
        if (res_it == plan.residual_battery.end()) {
            violations.push_back("missing residual battery entry for device " + dev.id);
        } else if (std::abs(res_it->second - (dev.battery - used)) >
                   1e-9 * std::max(1.0, dev.battery)) {
            violations.push_back("residual battery mismatch on device " + dev.id);
        }
    }
    for (const auto& [id, _] : plan.residual_battery)
        if (devices.count(id) == 0)
            violations.push_back("residual entry references unknown device: " + id);

    if (std::abs(revenue - plan.revenue) > 1e-9 * std::max(1.0, std::abs(revenue)))
        violations.push_back("revenue mismatch: recomputed " + std::to_string(revenue) +
                             " vs plan " + std::to_string(plan.revenue));
    return violations;
}

nlohmann::json report_to_json(const SolveReport& report) {
    nlohmann::json rejected = nlohmann::json::array();
    for (const auto& r : report.rejected)
        rejected.push_back({{"demand", r.demand_key}, {"reason", to_string(r.reason)}});
    nlohmann::json assignments = nlohmann::json::array();
    for (const auto& [dev, dem] : report.plan.assignments)
        assignments.push_back({{"device", dev}, {"demand", dem}});
    return nlohmann::json{{"assignments", assignments},
                          {"revenue", report.plan.revenue},
                          {"residual_battery", report.plan.residual_battery},
                          {"selected_count", report.selected_count},
                          {"rejected", rejected},
                          {"optimal", report.optimal}};
}

std::string report_to_csv(const Scenario& scenario, const SolveReport& report) {
    std::unordered_map<std::string, std::string> device_of;
    for (const auto& [dev, dem] : report.plan.assignments) device_of[dem] = dev;
    std::unordered_map<std::string, std::string> reason_of;
    for (const auto& r : report.rejected) reason_of[r.demand_key] = to_string(r.reason);

    std::ostringstream csv;
    csv << "record,key,status,device,revenue\n";
    for (const auto& dem : scenario.demands) {
        const std::string key = dem.key();
        if (device_of.count(key)) {
            const Device* dev = nullptr;
            for (const auto& d : scenario.devices)
                if (d.id == device_of[key]) dev = &d;
            csv << "demand," << key << ",selected," << device_of[key] << ","
                << (dev ? demand_revenue(*dev, dem) : 0.0) << "\n";
        } else {
            csv << "demand," << key << ",rejected:" << (reason_of.count(key) ? reason_of[key] : "?")
                << ",,0\n";
        }
    }
    for (const auto& dev : scenario.devices) {
        const auto it = report.plan.residual_battery.find(dev.id);
        csv << "device," << dev.id << ",residual,," << (it != report.plan.residual_battery.end() ? it->second : 0.0)
            << "\n";
    }
    csv << "total,,revenue,," << report.plan.revenue << "\n";
    return csv.str();
}

} // namespace sdm
