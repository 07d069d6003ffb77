#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecsched/errors.hpp"

namespace ecsched {

// Units are SI throughout: cycles, cycles/s, bits, bits/s, seconds.

/// One query task: required CPU cycles c_n, result size w_n in bits, and the
/// per-server executability row e_n.
struct QueryTask {
    int id = 0;
    double cycles = 0.0;
    double result_bits = 0.0;
    std::vector<std::uint8_t> executable;
};

struct EdgeServerSpec {
    int id = 0;
    double cpu_cycles_per_s = 0.0;  // F_k
    std::uint64_t capacity_bytes = 0;
    double transmit_power = 0.0;  // tp_k
    double bandwidth_hz = 0.0;    // B
};

struct EndUserSpec {
    int id = 0;
    std::vector<int> associated;         // edge server ids
    std::map<int, double> channel_gain;  // h_{k,n}, keyed by server id
    double cloud_rate = 0.0;             // r^{n,c}, bits/s
};

struct RadioEnv {
    double noise_power = 0.0;  // sigma^2
};

using BinaryMatrix = std::vector<std::vector<std::uint8_t>>;  // N x K
using RealMatrix = std::vector<std::vector<double>>;          // N x K

/// Downlink rate r^{n,k} = B log2(1 + tp_k h_{k,n} / sigma^2).
inline double downlink_rate(const EdgeServerSpec& server, const EndUserSpec& user,
                            const RadioEnv& env) {
    if (std::find(user.associated.begin(), user.associated.end(), server.id) ==
        user.associated.end())
        throw AssociationError("user " + std::to_string(user.id) +
                               " is not associated with server " + std::to_string(server.id));
    double h = user.channel_gain.at(server.id);
    return server.bandwidth_hz * std::log2(1.0 + server.transmit_power * h / env.noise_power);
}

/// Edge execution cost O_e^{n,k} = c_n/f + w_n/rate. Query upload is free.
inline double edge_cost(const QueryTask& task, double f, double rate) {
    if (f <= 0.0)
        throw DomainError("allocated edge resource must be positive, got " + std::to_string(f));
    return task.cycles / f + task.result_bits / rate;
}

/// Cloud execution cost O_c^n = w_n / r^{n,c}; cloud compute time is zero.
inline double cloud_cost(const QueryTask& task, double cloud_rate) {
    return task.result_bits / cloud_rate;
}

// Constraint checkers for Def. 6 / Eq. (7). Each returns a violation
// description, or nothing when the constraint holds. Resource sums tolerate
// a 1e-9 relative slack so closed-form allocations that saturate F_k pass.
inline std::optional<std::string> check_c1(const BinaryMatrix& d) {
    for (std::size_t n = 0; n < d.size(); ++n)
        for (std::size_t k = 0; k < d[n].size(); ++k)
            if (d[n][k] > 1)
                return "C1: D[" + std::to_string(n) + "][" + std::to_string(k) +
                       "] is not binary";
    return std::nullopt;
}

inline std::optional<std::string> check_c2(const BinaryMatrix& d,
                                           const std::vector<QueryTask>& tasks) {
    for (std::size_t n = 0; n < d.size(); ++n) {
        int assigned = 0;
        for (std::size_t k = 0; k < d[n].size(); ++k)
            assigned += d[n][k] && tasks[n].executable[k] ? 1 : 0;
        if (assigned > 1)
            return "C2: task " + std::to_string(n) + " is assigned to " +
                   std::to_string(assigned) + " edge servers";
    }
    return std::nullopt;
}

inline std::optional<std::string> check_c3(const RealMatrix& f,
                                           const std::vector<EdgeServerSpec>& servers) {
    for (std::size_t n = 0; n < f.size(); ++n)
        for (std::size_t k = 0; k < f[n].size(); ++k) {
            double cap = servers[k].cpu_cycles_per_s;
            if (f[n][k] < 0.0 || f[n][k] > cap * (1.0 + 1e-9))
                return "C3: f[" + std::to_string(n) + "][" + std::to_string(k) +
                       "] outside [0, F_k]";
        }
    return std::nullopt;
}

inline std::optional<std::string> check_c4(const RealMatrix& f,
                                           const std::vector<EdgeServerSpec>& servers) {
    for (std::size_t k = 0; k < servers.size(); ++k) {
        double sum = 0.0;
        for (std::size_t n = 0; n < f.size(); ++n) sum += f[n][k];
        double cap = servers[k].cpu_cycles_per_s;
        if (sum > cap * (1.0 + 1e-9))
            return "C4: server " + std::to_string(k) + " over-allocated: " +
                   std::to_string(sum) + " > " + std::to_string(cap);
    }
    return std::nullopt;
}

/// Total cost Eq. (5): edge terms where D_{n,k} e_{n,k} = 1, cloud terms for
/// everyone else. `task_users[n]` is the user submitting task n (users with
/// several queries appear once per task). Throws ConstraintError naming the
/// violated constraint for infeasible inputs.
inline double total_cost(const BinaryMatrix& d, const RealMatrix& f,
                         const std::vector<QueryTask>& tasks,
                         const std::vector<EdgeServerSpec>& servers,
                         const std::vector<EndUserSpec>& task_users, const RadioEnv& env) {
    if (auto v = check_c1(d)) throw ConstraintError("C1", *v);
    if (auto v = check_c2(d, tasks)) throw ConstraintError("C2", *v);
    if (auto v = check_c3(f, servers)) throw ConstraintError("C3", *v);
    if (auto v = check_c4(f, servers)) throw ConstraintError("C4", *v);

    double total = 0.0;
    for (std::size_t n = 0; n < tasks.size(); ++n) {
        int on_edge = 0;
        for (std::size_t k = 0; k < servers.size(); ++k) {
            if (!(d[n][k] && tasks[n].executable[k])) continue;
            on_edge = 1;
            double rate = downlink_rate(servers[k], task_users[n], env);
            total += edge_cost(tasks[n], f[n][k], rate);
        }
        if (!on_edge) total += cloud_cost(tasks[n], task_users[n].cloud_rate);
    }
    return total;
}

}  // namespace ecsched
