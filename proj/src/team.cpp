#include "teamreg/team.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "teamreg/errors.hpp"

namespace teamreg {

namespace {

void check_simplex_row(const double* row, int n, double tol, const std::string& what) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!(row[i] >= 0.0))
            throw ValidationError(what + ": negative entry at position " + std::to_string(i));
        sum += row[i];
    }
    if (std::abs(sum - 1.0) > tol)
        throw ValidationError(what + ": row sums to " + std::to_string(sum) + ", expected 1");
}

std::vector<int> label_dims(const std::vector<std::vector<std::string>>& labels) {
    std::vector<int> dims;
    dims.reserve(labels.size());
    for (const auto& l : labels) dims.push_back(static_cast<int>(l.size()));
    return dims;
}

}  // namespace

Policy Policy::uniform(int agent, int num_obs, int num_actions) {
    Policy p;
    p.agent = agent;
    p.num_obs = num_obs;
    p.num_actions = num_actions;
    p.table.assign(static_cast<std::size_t>(num_obs) * num_actions, 1.0 / num_actions);
    return p;
}

void Policy::validate(double tol) const {
    if (num_obs < 1 || num_actions < 1)
        throw ShapeError("policy: empty observation or action space");
    if (table.size() != static_cast<std::size_t>(num_obs) * num_actions)
        throw ShapeError("policy: table size does not match num_obs x num_actions");
    for (int y = 0; y < num_obs; ++y)
        check_simplex_row(row(y), num_actions, tol,
                          "policy of agent " + std::to_string(agent + 1) + ", observation " +
                              std::to_string(y));
}

void PolicyProfile::validate(double tol) const {
    for (int j = 0; j < num_agents(); ++j) {
        if (policies[j].agent != j)
            throw ShapeError("profile: policy at position " + std::to_string(j) +
                             " carries agent index " + std::to_string(policies[j].agent));
        policies[j].validate(tol);
    }
}

void StaticTeam::finalize() {
    obs_space = IndexSpace(label_dims(obs_labels));
    act_space = IndexSpace(label_dims(action_labels));
}

void StaticTeam::validate(double tol, std::size_t cap) const {
    if (num_agents < 1) throw ShapeError("static team: num_agents must be >= 1");
    if (static_cast<int>(obs_labels.size()) != num_agents ||
        static_cast<int>(action_labels.size()) != num_agents ||
        static_cast<int>(regularizers.size()) != num_agents)
        throw ShapeError("static team: per-agent lists must all have length num_agents");
    for (int i = 0; i < num_agents; ++i) {
        if (obs_labels[i].empty() || action_labels[i].empty())
            throw ShapeError("static team: agent " + std::to_string(i + 1) +
                             " has an empty observation or action set");
        regularizers[i].validate();
        if (regularizers[i].action_count != static_cast<int>(action_labels[i].size()))
            throw ShapeError("static team: regularizer of agent " + std::to_string(i + 1) +
                             " has mismatched action_count");
    }
    if (obs_space.total * act_space.total > cap)
        throw SizeError("static team: reward tensor would hold " +
                        std::to_string(obs_space.total * act_space.total) +
                        " entries, above the cap of " + std::to_string(cap));
    if (reward_r.size() != obs_space.total * act_space.total)
        throw ShapeError("static team: reward tensor has " + std::to_string(reward_r.size()) +
                         " entries, expected " + std::to_string(obs_space.total * act_space.total));
    for (double v : reward_r)
        if (!std::isfinite(v)) throw ValidationError("static team: non-finite reward entry");

    if (static_cast<int>(obs_marginals.size()) != num_agents)
        throw ShapeError("static team: obs_marginals must have one row per agent");
    for (int i = 0; i < num_agents; ++i) {
        const int ny = static_cast<int>(obs_labels[i].size());
        if (static_cast<int>(obs_marginals[i].size()) != ny)
            throw ShapeError("static team: obs_marginals of agent " + std::to_string(i + 1) +
                             " has wrong length");
        for (double v : obs_marginals[i])
            if (v != 1.0 / ny)
                throw ValidationError("static team: obs marginal of agent " +
                                      std::to_string(i + 1) + " is not exactly uniform");
    }
}

double StaticTeam::min_reward() const {
    return *std::min_element(reward_r.begin(), reward_r.end());
}

double StaticTeam::max_reward() const {
    return *std::max_element(reward_r.begin(), reward_r.end());
}

std::size_t DynamicTeamSpec::prefix_total(int agent) const {
    std::size_t t = 1;
    for (int k = 0; k < agent; ++k) t *= static_cast<std::size_t>(act_space.dims[k]);
    return t;
}

void DynamicTeamSpec::finalize() {
    obs_space = IndexSpace(label_dims(obs_labels));
    act_space = IndexSpace(label_dims(action_labels));
}

void DynamicTeamSpec::validate(double tol, std::size_t cap) const {
    if (num_agents < 1) throw ShapeError("dynamic spec: num_agents must be >= 1");
    if (states.empty()) throw ShapeError("dynamic spec: empty state space");
    if (static_cast<int>(obs_labels.size()) != num_agents ||
        static_cast<int>(action_labels.size()) != num_agents ||
        static_cast<int>(channels.size()) != num_agents)
        throw ShapeError("dynamic spec: per-agent lists must all have length num_agents");

    if (prior.size() != states.size())
        throw ShapeError("dynamic spec: prior length does not match state count");
    check_simplex_row(prior.data(), static_cast<int>(prior.size()), tol, "prior");

    const std::size_t nx = states.size();
    for (int i = 0; i < num_agents; ++i) {
        const int ny = obs_space.dims[i];
        if (ny < 1 || act_space.dims[i] < 1)
            throw ShapeError("dynamic spec: agent " + std::to_string(i + 1) +
                             " has an empty observation or action set");
        const std::size_t rows = nx * prefix_total(i);
        if (channels[i].size() != rows * static_cast<std::size_t>(ny))
            throw ShapeError("dynamic spec: channel of agent " + std::to_string(i + 1) +
                             " has wrong size");
        for (std::size_t rr = 0; rr < rows; ++rr)
            check_simplex_row(channels[i].data() + rr * ny, ny, tol,
                              "channel of agent " + std::to_string(i + 1) + ", row " +
                                  std::to_string(rr) + " (state " + std::to_string(rr / prefix_total(i)) +
                                  ", action prefix " + std::to_string(rr % prefix_total(i)) + ")");
    }

    const std::size_t cells = nx * obs_space.total * act_space.total;
    if (cells > cap)
        throw SizeError("dynamic spec: reward table would hold " + std::to_string(cells) +
                        " entries, above the cap of " + std::to_string(cap));
    if (reward_p.size() != cells)
        throw ShapeError("dynamic spec: reward table has " + std::to_string(reward_p.size()) +
                         " entries, expected " + std::to_string(cells));
    for (double v : reward_p)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ValidationError("dynamic spec: reward entries must be finite and >= 0");
}

double policy_l1_distance(const Policy& p, const Policy& q) {
    const double pi = 1.0 / p.num_obs;
    double dist = 0.0;
    for (int y = 0; y < p.num_obs; ++y) {
        double row_dist = 0.0;
        for (int u = 0; u < p.num_actions; ++u)
            row_dist += std::abs(p.row(y)[u] - q.row(y)[u]);
        dist += pi * row_dist;
    }
    return dist;
}

std::vector<double> profile_distance(const PolicyProfile& a, const PolicyProfile& b) {
    std::vector<double> d(a.num_agents());
    for (int j = 0; j < a.num_agents(); ++j) d[j] = policy_l1_distance(a.policies[j], b.policies[j]);
    return d;
}

PolicyProfile uniform_profile(const StaticTeam& team) {
    PolicyProfile prof;
    for (int j = 0; j < team.num_agents; ++j)
        prof.policies.push_back(Policy::uniform(j, team.num_obs(j), team.num_actions(j)));
    return prof;
}

PolicyProfile uniform_profile_for_dynamic(const DynamicTeamSpec& spec) {
    PolicyProfile prof;
    for (int j = 0; j < spec.num_agents; ++j)
        prof.policies.push_back(Policy::uniform(j, spec.num_obs(j), spec.num_actions(j)));
    return prof;
}

Policy random_policy(rng::Engine& eng, int agent, int num_obs, int num_actions) {
    Policy p;
    p.agent = agent;
    p.num_obs = num_obs;
    p.num_actions = num_actions;
    p.table.reserve(static_cast<std::size_t>(num_obs) * num_actions);
    for (int y = 0; y < num_obs; ++y) {
        auto row = rng::simplex_point(eng, num_actions);
        p.table.insert(p.table.end(), row.begin(), row.end());
    }
    return p;
}

PolicyProfile random_profile(rng::Engine& eng, const StaticTeam& team) {
    PolicyProfile prof;
    for (int j = 0; j < team.num_agents; ++j)
        prof.policies.push_back(random_policy(eng, j, team.num_obs(j), team.num_actions(j)));
    return prof;
}

PolicyProfile random_profile_for_dynamic(rng::Engine& eng, const DynamicTeamSpec& spec) {
    PolicyProfile prof;
    for (int j = 0; j < spec.num_agents; ++j)
        prof.policies.push_back(random_policy(eng, j, spec.num_obs(j), spec.num_actions(j)));
    return prof;
}

}  // namespace teamreg
