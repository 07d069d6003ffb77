#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "ecsched/errors.hpp"
#include "ecsched/scheduling_problem.hpp"

namespace ecsched {

/// Solution of the convex relaxation R-QAD (Eq. (16)) at a branch node.
/// `lower = value - gap` is a certified lower bound on the relaxed optimum,
/// hence on every integer completion of the node: safe for pruning.
struct RelaxationResult {
    RealMatrix d_cont;  // decided rows one-hot, free rows fractional
    double value = 0.0;
    double gap = 0.0;
    double lower = 0.0;
};

namespace detail {

/// Exact minimizer of sum_k (alpha_k x_k^2 + beta_k x_k) over the simplex
/// slab {x >= 0, sum x <= 1}, alpha_k > 0. Unconstrained clamp first, then a
/// waterfilling multiplier over the active prefix when the budget binds.
inline void min_quadratic_over_slab(const std::vector<double>& alpha,
                                    const std::vector<double>& beta, std::vector<double>& x) {
    std::size_t m = alpha.size();
    x.assign(m, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        x[k] = std::max(0.0, -beta[k] / (2.0 * alpha[k]));
        total += x[k];
    }
    if (total <= 1.0) return;

    // Budget binds: x_k(lambda) = max(0, (mu_k - lambda)) / (2 alpha_k) with
    // sum = 1, mu_k = -beta_k. Scan prefixes in descending mu order.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return -beta[a] > -beta[b]; });
    double sum_mu_over = 0.0, sum_inv = 0.0, lambda = 0.0;
    bool found = false;
    for (std::size_t i = 0; i < m; ++i) {
        double mu = -beta[order[i]];
        sum_mu_over += mu / (2.0 * alpha[order[i]]);
        sum_inv += 1.0 / (2.0 * alpha[order[i]]);
        double cand = (sum_mu_over - 1.0) / sum_inv;
        bool upper_ok = cand < mu;
        bool lower_ok = (i + 1 == m) || cand >= -beta[order[i + 1]];
        if (upper_ok && lower_ok) {
            lambda = cand;
            found = true;
            break;
        }
    }
    if (!found) lambda = (sum_mu_over - 1.0) / sum_inv;  // floating corner: full active set

    total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        x[k] = std::max(0.0, (-beta[k] - lambda) / (2.0 * alpha[k]));
        total += x[k];
    }
    if (total > 1.0)  // floating slack: renormalize into the feasible set
        for (std::size_t k = 0; k < m; ++k) x[k] /= total;
}

}  // namespace detail

/// Solves the node relaxation: users below `decided.size()` are fixed to
/// their decided target (server id, or -1 for the cloud) and enter the
/// objective as constants (their sqrt(c) offsets stay inside the per-server
/// quadratic); remaining users relax D into [0,1] under C2. Block-coordinate
/// descent with exact per-user minimization, stopped by the Frank-Wolfe gap
/// falling below eps.
inline RelaxationResult solve_rqad(const SchedulingProblem& p, std::span<const int> decided,
                                   double eps) {
    if (eps <= 0.0) throw DomainError("relaxation gap tolerance must be positive");
    const int N = p.user_count;
    const int K = p.server_count;
    const int depth = static_cast<int>(decided.size());

    RelaxationResult res;
    res.d_cont.assign(N, std::vector<double>(K, 0.0));

    // Decided users: per-server sqrt(c) offsets and constant linear cost.
    std::vector<double> offset(K, 0.0);
    double const_cost = 0.0;
    for (int n = 0; n < depth; ++n) {
        int k = decided[n];
        if (k >= 0) {
            offset[k] += p.sqrt_c[n];
            const_cost += p.edge_tx[n][k];
            res.d_cont[n][k] = 1.0;
        } else {
            const_cost += p.cloud_tx[n];
        }
    }

    // Free users with at least one eligible server carry variables; the rest
    // are cloud-bound constants.
    std::vector<int> free_users;
    std::vector<std::vector<int>> elig_servers;
    for (int n = depth; n < N; ++n) {
        std::vector<int> ks;
        for (int k = 0; k < K; ++k)
            if (p.elig[n][k]) ks.push_back(k);
        if (ks.empty()) {
            const_cost += p.cloud_tx[n];
        } else {
            free_users.push_back(n);
            elig_servers.push_back(std::move(ks));
            const_cost += p.cloud_tx[n];  // baseline; edge shares subtract below
        }
    }

    // Objective over free variables x:
    //   sum_k (offset_k + u_k)^2 / F_k + sum_{n,k} x_{n,k} lin_{n,k} + const
    // with u_k = sum_n x_{n,k} sqrt(c_n), lin = edge_tx - cloud_tx.
    std::vector<double> u(K, 0.0);

    auto value_at = [&]() {
        double v = const_cost;
        for (int k = 0; k < K; ++k) v += (offset[k] + u[k]) * (offset[k] + u[k]) / p.f_cap[k];
        for (std::size_t i = 0; i < free_users.size(); ++i) {
            int n = free_users[i];
            for (int k : elig_servers[i])
                v += res.d_cont[n][k] * (p.edge_tx[n][k] - p.cloud_tx[n]);
        }
        return v;
    };

    auto fw_gap = [&]() {
        double gap = 0.0;
        for (std::size_t i = 0; i < free_users.size(); ++i) {
            int n = free_users[i];
            double at_x = 0.0, best_vertex = 0.0;
            for (int k : elig_servers[i]) {
                double g = 2.0 * p.sqrt_c[n] * (offset[k] + u[k]) / p.f_cap[k] +
                           p.edge_tx[n][k] - p.cloud_tx[n];
                at_x += g * res.d_cont[n][k];
                best_vertex = std::min(best_vertex, g);  // vertex 0 contributes 0
            }
            gap += at_x - best_vertex;
        }
        return gap;
    };

    if (free_users.empty()) {
        res.value = value_at();
        res.gap = 0.0;
        res.lower = res.value;
        return res;
    }

    constexpr int kMaxSweeps = 100000;
    std::vector<double> alpha, beta, x;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        for (std::size_t i = 0; i < free_users.size(); ++i) {
            int n = free_users[i];
            const std::vector<int>& ks = elig_servers[i];
            alpha.assign(ks.size(), 0.0);
            beta.assign(ks.size(), 0.0);
            for (std::size_t j = 0; j < ks.size(); ++j) {
                int k = ks[j];
                double residual = offset[k] + u[k] - res.d_cont[n][k] * p.sqrt_c[n];
                alpha[j] = p.cycles[n] / p.f_cap[k];
                beta[j] = 2.0 * residual * p.sqrt_c[n] / p.f_cap[k] + p.edge_tx[n][k] -
                          p.cloud_tx[n];
            }
            detail::min_quadratic_over_slab(alpha, beta, x);
            for (std::size_t j = 0; j < ks.size(); ++j) {
                int k = ks[j];
                u[k] += (x[j] - res.d_cont[n][k]) * p.sqrt_c[n];
                res.d_cont[n][k] = x[j];
            }
        }
        // Refresh aggregates to stop incremental drift, then certify.
        std::fill(u.begin(), u.end(), 0.0);
        for (std::size_t i = 0; i < free_users.size(); ++i)
            for (int k : elig_servers[i])
                u[k] += res.d_cont[free_users[i]][k] * p.sqrt_c[free_users[i]];
        double gap = fw_gap();
        if (gap <= eps) {
            res.value = value_at();
            res.gap = std::max(gap, 0.0);
            res.lower = res.value - res.gap;
            return res;
        }
    }
    throw SolverError("relaxation did not reach the requested gap within " +
                          std::to_string(kMaxSweeps) + " sweeps (gap " + format_g(fw_gap()) + ")",
                      fw_gap());
}

/// Eq. (17) rounding with feasibility repair: threshold at 0.5 (boundary
/// included), then rows landing on several servers keep only the entry with
/// the largest fractional value (ties: smallest k).
inline Assignment round_relaxation(const RealMatrix& d_cont, const BinaryMatrix& elig) {
    Assignment a;
    a.d.assign(d_cont.size(), std::vector<std::uint8_t>(d_cont.empty() ? 0 : d_cont[0].size(), 0));
    for (std::size_t n = 0; n < d_cont.size(); ++n) {
        int kept = -1;
        double kept_value = -1.0;
        int chosen = 0;
        for (std::size_t k = 0; k < d_cont[n].size(); ++k) {
            if (!elig[n][k] || d_cont[n][k] < 0.5) continue;
            a.d[n][k] = 1;
            ++chosen;
            if (d_cont[n][k] > kept_value) {
                kept_value = d_cont[n][k];
                kept = static_cast<int>(k);
            }
        }
        if (chosen > 1) {
            for (std::size_t k = 0; k < d_cont[n].size(); ++k)
                a.d[n][k] = (static_cast<int>(k) == kept) ? 1 : 0;
        }
    }
    return a;
}

}  // namespace ecsched
