#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "trustrecon/sim_core.hpp"

namespace trustrecon {

struct ResourceProfile {
    double cpu = 0.0;
    double mem = 0.0;
    double bw = 0.0;

    void validate() const;
    /// Componentwise ≥.
    bool covers(const ResourceProfile& required) const;
    ResourceProfile operator+(const ResourceProfile& other) const {
        return {cpu + other.cpu, mem + other.mem, bw + other.bw};
    }
};

struct TaskRequirement {
    std::size_t task_id = 0;
    ResourceProfile required;
};

struct SelectionRecord {
    std::size_t task_id = 0;
    std::vector<DeviceId> selected;  // trust order, at most two
    bool satisfied = false;
};

/// Unordered device pair with lo < hi.
struct DevicePair {
    DeviceId lo = 0;
    DeviceId hi = 0;
    auto operator<=>(const DevicePair&) const = default;
};

/// Normalises the order. Throws InputError for a self-pair.
DevicePair make_pair(DeviceId a, DeviceId b);

/// Trust hypergraph: pair → weight in [0,1].
struct TrustHypergraphState {
    std::map<DevicePair, double> weights;

    double weight(DeviceId a, DeviceId b) const;
    bool operator==(const TrustHypergraphState&) const = default;
};

TaskRequirement sample_task(std::size_t task_id, Rng& rng);
ResourceProfile sample_resources(Rng& rng);

/// Greedy top-trust selection (ties → lower id) of at most two devices; stops
/// as soon as the pooled resources cover the requirement.
SelectionRecord select_collaborators(const TaskRequirement& task, const std::map<DeviceId, ResourceProfile>& resources,
                                     const std::map<DeviceId, double>& trust);

/// Sets each pair's weight to the mean of its members' latest trust.
TrustHypergraphState update_hypergraph_weights(TrustHypergraphState state, const std::map<DeviceId, double>& latest_trust,
                                               const std::set<DevicePair>& pairs);

/// All unordered pairs within a selection.
std::set<DevicePair> selection_pairs(const SelectionRecord& record);

}  // namespace trustrecon
