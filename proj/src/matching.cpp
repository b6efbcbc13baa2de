#include "trustrecon/matching.hpp"

#include <algorithm>
#include <string>

#include "trustrecon/errors.hpp"

namespace trustrecon {

namespace {

bool unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void ResourceProfile::validate() const {
    if (!unit(cpu) || !unit(mem) || !unit(bw)) throw InputError("resource component outside [0,1]");
}

bool ResourceProfile::covers(const ResourceProfile& required) const {
    return cpu >= required.cpu && mem >= required.mem && bw >= required.bw;
}

DevicePair make_pair(DeviceId a, DeviceId b) {
    if (a == b) throw InputError("self-pair for device " + std::to_string(a));
    return a < b ? DevicePair{a, b} : DevicePair{b, a};
}

double TrustHypergraphState::weight(DeviceId a, DeviceId b) const {
    auto it = weights.find(make_pair(a, b));
    if (it == weights.end()) throw InputError("no hypergraph weight for pair");
    return it->second;
}

TaskRequirement sample_task(std::size_t task_id, Rng& rng) {
    TaskRequirement task;
    task.task_id = task_id;
    task.required = sample_resources(rng);
    return task;
}

ResourceProfile sample_resources(Rng& rng) {
    ResourceProfile r;
    r.cpu = rng.uniform();
    r.mem = rng.uniform();
    r.bw = rng.uniform();
    return r;
}

SelectionRecord select_collaborators(const TaskRequirement& task, const std::map<DeviceId, ResourceProfile>& resources,
                                     const std::map<DeviceId, double>& trust) {
    if (trust.size() < 2) throw InputError("select_collaborators needs at least two devices");
    if (resources.size() != trust.size()) throw InputError("resource and trust maps differ");
    for (const auto& [device, _] : trust) {
        if (resources.count(device) == 0) throw InputError("resource and trust maps differ");
    }

    std::vector<std::pair<DeviceId, double>> order(trust.begin(), trust.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    SelectionRecord record;
    record.task_id = task.task_id;
    ResourceProfile pooled;
    for (const auto& [device, _] : order) {
        if (record.selected.size() == 2) break;
        if (!record.selected.empty() && pooled.covers(task.required)) break;
        record.selected.push_back(device);
        pooled = pooled + resources.at(device);
    }
    record.satisfied = pooled.covers(task.required);
    return record;
}

TrustHypergraphState update_hypergraph_weights(TrustHypergraphState state, const std::map<DeviceId, double>& latest_trust,
                                               const std::set<DevicePair>& pairs) {
    for (const auto& pair : pairs) {
        if (pair.lo == pair.hi) throw InputError("self-pair for device " + std::to_string(pair.lo));
        auto a = latest_trust.find(pair.lo);
        auto b = latest_trust.find(pair.hi);
        if (a == latest_trust.end() || b == latest_trust.end()) {
            throw InputError("pair member missing from latest trust");
        }
        state.weights[make_pair(pair.lo, pair.hi)] = 0.5 * (a->second + b->second);
    }
    return state;
}

std::set<DevicePair> selection_pairs(const SelectionRecord& record) {
    std::set<DevicePair> pairs;
    for (std::size_t i = 0; i < record.selected.size(); ++i) {
        for (std::size_t j = i + 1; j < record.selected.size(); ++j) {
            pairs.insert(make_pair(record.selected[i], record.selected[j]));
        }
    }
    return pairs;
}

}  // namespace trustrecon
