#pragma once

#include "sdm/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sdm {

/// Ratio of generated revenue to energy consumption; the greedy sort signal.
/// With the default energy model it reduces to unit price over per-sample
/// energy and is independent of the sample count.
double normalized_revenue(const Device& device, const Demand& demand);

enum class RejectReason { battery, quality, dominated };

std::string to_string(RejectReason r);

struct RejectedDemand {
    std::string demand_key;
    RejectReason reason = RejectReason::battery;
};

struct SolveReport {
    AllocationPlan plan;
    int selected_count = 0;
    std::vector<RejectedDemand> rejected;
    bool optimal = true; // exact solves only; false when the time budget ran out
};

/// Device scan order during greedy assignment. The printed heuristic sorts
/// devices once by battery availability; re-sorting against current residual
/// after each placement is available as the alternative reading.
enum class DeviceOrder { initial_battery, residual_battery };

struct GreedyOptions {
    DeviceOrder device_order = DeviceOrder::initial_battery;
};

/// Greedy heuristic: demands in descending best-feasible normalized revenue
/// (ties: descending revenue, then ascending (buyer, type)), each placed on
/// the first device, in battery order, with enough residual energy and a
/// quality cap meeting the demand. Deterministic.
SolveReport solve_greedy(const Scenario& scenario, const GreedyOptions& options = {});

struct SolveLimits {
    int max_demands = 20;
    int max_devices = 5;
    double timeout_seconds = 10.0;
};

/// Exact optimum of the selection/allocation problem. Straight enumeration
/// below 12 demands; otherwise depth-first branch-and-bound over per-demand
/// choices with a pooled fractional upper bound. Throws std::invalid_argument
/// when the scenario exceeds the declared limits. On timeout returns the best
/// plan found with optimal = false.
SolveReport solve_exact(const Scenario& scenario, const SolveLimits& limits = {});

/// Re-derives every constraint from scenario inputs: battery budgets, at most
/// one device per demand, quality caps, plus revenue/residual recomputation.
/// Empty result means the plan is clean. Floating-point sums are compared
/// with 1e-9 relative tolerance.
std::vector<std::string> validate_plan(const Scenario& scenario, const AllocationPlan& plan);

nlohmann::json report_to_json(const SolveReport& report);

/// CSV summary: one row per demand with status, device, revenue; then one row
/// per device with residual battery.
std::string report_to_csv(const Scenario& scenario, const SolveReport& report);

} // namespace sdm
