#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ecsched/cost_model.hpp"
#include "ecsched/errors.hpp"
#include "ecsched/format.hpp"

namespace ecsched {

/// Query assignment matrix D (C1, C2 of Eq. (7) hold for well-formed values).
struct Assignment {
    BinaryMatrix d;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Computational resource allocation matrix F; zero wherever D e = 0.
struct Allocation {
    RealMatrix f;

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Precomputed scheduling terms: sqrt(c_n), per-pair transmission costs
/// w_n/r^{n,k}, cloud costs w_n/r^{n,c} and the executability matrix. All
/// scheduler algorithms run over this view.
struct SchedulingProblem {
    int user_count = 0;    // N (one entry per query task)
    int server_count = 0;  // K
    std::vector<double> cycles;
    std::vector<double> sqrt_c;
    std::vector<double> f_cap;  // F_k
    RealMatrix edge_tx;         // valid where elig[n][k] = 1
    std::vector<double> cloud_tx;
    BinaryMatrix elig;

    static SchedulingProblem build(const std::vector<QueryTask>& tasks,
                                   const std::vector<EdgeServerSpec>& servers,
                                   const std::vector<EndUserSpec>& task_users,
                                   const RadioEnv& env) {
        SchedulingProblem p;
        p.user_count = static_cast<int>(tasks.size());
        p.server_count = static_cast<int>(servers.size());
        for (const EdgeServerSpec& s : servers) p.f_cap.push_back(s.cpu_cycles_per_s);
        p.edge_tx.assign(tasks.size(), std::vector<double>(servers.size(), 0.0));
        p.elig.assign(tasks.size(), std::vector<std::uint8_t>(servers.size(), 0));
        for (std::size_t n = 0; n < tasks.size(); ++n) {
            p.cycles.push_back(tasks[n].cycles);
            p.sqrt_c.push_back(std::sqrt(tasks[n].cycles));
            p.cloud_tx.push_back(tasks[n].result_bits / task_users[n].cloud_rate);
            for (std::size_t k = 0; k < servers.size(); ++k) {
                if (!tasks[n].executable[k]) continue;
                p.elig[n][k] = 1;
                double rate = downlink_rate(servers[k], task_users[n], env);
                p.edge_tx[n][k] = tasks[n].result_bits / rate;
            }
        }
        return p;
    }

    /// Target server of task n under D, or -1 for the cloud.
    int target_of(const Assignment& a, int n) const {
        for (int k = 0; k < server_count; ++k)
            if (a.d[n][k] && elig[n][k]) return k;
        return -1;
    }
};

/// Closed-form optimal allocation for a fixed assignment (Eq. (13)):
/// f*_{n,k} = F_k sqrt(c_n) / sum_{m in N_k} sqrt(c_m). Nonempty servers are
/// saturated exactly.
inline Allocation cra_closed_form(const Assignment& a, const SchedulingProblem& p) {
    Allocation alloc;
    alloc.f.assign(p.user_count, std::vector<double>(p.server_count, 0.0));
    for (int k = 0; k < p.server_count; ++k) {
        double sum_sqrt = 0.0;
        for (int n = 0; n < p.user_count; ++n)
            if (a.d[n][k] && p.elig[n][k]) sum_sqrt += p.sqrt_c[n];
        if (sum_sqrt == 0.0) continue;
        for (int n = 0; n < p.user_count; ++n)
            if (a.d[n][k] && p.elig[n][k]) alloc.f[n][k] = p.f_cap[k] * p.sqrt_c[n] / sum_sqrt;
    }
    return alloc;
}

/// Optimal compute cost of Eq. (14): sum_k (sum_{n in N_k} sqrt(c_n))^2 / F_k.
inline double cra_compute_cost(const Assignment& a, const SchedulingProblem& p) {
    double total = 0.0;
    for (int k = 0; k < p.server_count; ++k) {
        double sum_sqrt = 0.0;
        for (int n = 0; n < p.user_count; ++n)
            if (a.d[n][k] && p.elig[n][k]) sum_sqrt += p.sqrt_c[n];
        total += sum_sqrt * sum_sqrt / p.f_cap[k];
    }
    return total;
}

/// Eq. (18): total cost of a feasible assignment under its optimal
/// allocation. Agrees with cost_model::total_cost of the CRA allocation.
inline double upper_bound(const Assignment& a, const SchedulingProblem& p) {
    double total = cra_compute_cost(a, p);
    for (int k = 0; k < p.server_count; ++k)
        for (int n = 0; n < p.user_count; ++n)
            if (a.d[n][k] && p.elig[n][k]) total += p.edge_tx[n][k];
    for (int n = 0; n < p.user_count; ++n)
        if (p.target_of(a, n) < 0) total += p.cloud_tx[n];
    return total;
}

/// Final solver output: assignment, allocation, objective value and the
/// per-target assignment ratios (servers first, cloud last).
struct Schedule {
    Assignment assignment;
    Allocation allocation;
    double total_cost = 0.0;
    std::vector<double> ratios;
};

inline Schedule make_schedule(const Assignment& a, const SchedulingProblem& p) {
    Schedule s;
    s.assignment = a;
    s.allocation = cra_closed_form(a, p);
    s.total_cost = upper_bound(a, p);
    std::vector<int> counts(p.server_count + 1, 0);
    for (int n = 0; n < p.user_count; ++n) {
        int t = p.target_of(a, n);
        ++counts[t < 0 ? p.server_count : t];
    }
    for (int i = 0; i <= p.server_count; ++i)
        s.ratios.push_back(p.user_count ? double(counts[i]) / double(p.user_count) : 0.0);
    return s;
}

/// Schedule dump: `total_cost_seconds=` header, one `n<TAB>target<TAB>f`
/// line per task, then the ratio line.
inline std::string format_schedule(const Schedule& s) {
    std::string out = "total_cost_seconds=" + format_g(s.total_cost) + "\n";
    for (std::size_t n = 0; n < s.assignment.d.size(); ++n) {
        int target = -1;
        for (std::size_t k = 0; k < s.assignment.d[n].size(); ++k)
            if (s.assignment.d[n][k] && s.allocation.f[n][k] > 0.0) target = static_cast<int>(k);
        out += std::to_string(n);
        out += '\t';
        out += target < 0 ? "cloud" : std::to_string(target);
        out += '\t';
        out += format_g(target < 0 ? 0.0 : s.allocation.f[n][target]);
        out += '\n';
    }
    out += "ratios=";
    for (std::size_t i = 0; i < s.ratios.size(); ++i) {
        if (i) out += ',';
        out += format_g(s.ratios[i]);
    }
    out += '\n';
    return out;
}

}  // namespace ecsched
