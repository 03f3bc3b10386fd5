// Compares the OpenMP kernels against their serial reference
// implementations on synthetic instances and prints a timing table.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "teamreg/best_response.hpp"
#include "teamreg/oracle_eval.hpp"
#include "teamreg/reward.hpp"
#include "teamreg/rng.hpp"
#include "teamreg/static_reduction.hpp"
#include "teamreg/team.hpp"

using namespace teamreg;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_ms();
        f();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

StaticTeam synthetic_team(int num_agents, int ny, int nu, std::uint64_t seed) {
    StaticTeam team;
    team.num_agents = num_agents;
    for (int i = 0; i < num_agents; ++i) {
        std::vector<std::string> obs, act;
        for (int y = 0; y < ny; ++y) obs.push_back("y" + std::to_string(y));
        for (int u = 0; u < nu; ++u) act.push_back("u" + std::to_string(u));
        team.obs_labels.push_back(obs);
        team.action_labels.push_back(act);
        team.obs_marginals.push_back(std::vector<double>(ny, 1.0 / ny));
        team.regularizers.push_back({RegularizerKind::NegEntropy, 1.0, nu});
    }
    team.finalize();
    rng::Engine eng(seed);
    team.reward_r.resize(team.obs_space.total * team.act_space.total);
    for (double& v : team.reward_r) v = rng::uniform01(eng);
    return team;
}

DynamicTeamSpec synthetic_dynamic(int num_agents, int nx, int ny, int nu, std::uint64_t seed) {
    DynamicTeamSpec spec;
    spec.num_agents = num_agents;
    rng::Engine eng(seed);
    for (int x = 0; x < nx; ++x) spec.states.push_back("x" + std::to_string(x));
    spec.prior = rng::simplex_point(eng, nx);
    for (int i = 0; i < num_agents; ++i) {
        std::vector<std::string> obs, act;
        for (int y = 0; y < ny; ++y) obs.push_back("y" + std::to_string(y));
        for (int u = 0; u < nu; ++u) act.push_back("u" + std::to_string(u));
        spec.obs_labels.push_back(obs);
        spec.action_labels.push_back(act);
    }
    spec.finalize();
    for (int i = 0; i < num_agents; ++i) {
        const std::size_t rows = static_cast<std::size_t>(nx) * spec.prefix_total(i);
        std::vector<double> ch;
        for (std::size_t r = 0; r < rows; ++r) {
            auto row = rng::simplex_point(eng, ny);
            ch.insert(ch.end(), row.begin(), row.end());
        }
        spec.channels.push_back(std::move(ch));
    }
    spec.reward_p.resize(static_cast<std::size_t>(nx) * spec.obs_space.total *
                         spec.act_space.total);
    for (double& v : spec.reward_p) v = rng::uniform01(eng);
    return spec;
}

void report(const char* name, double serial_ms, double parallel_ms, double check) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx   (check %.6g)\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, check);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const DynamicTeamSpec spec = synthetic_dynamic(3, 24, 6, 6, 11);
        const std::vector<RegularizerSpec> regs(3, {RegularizerKind::NegEntropy, 2.0, 6});
        StaticTeam out;
        const double ts = time_best_of(3, [&] { out = serial::reduce(spec, regs); });
        StaticTeam out2;
        const double tp = time_best_of(3, [&] { out2 = reduce(spec, regs); });
        double diff = 0.0;
        for (std::size_t i = 0; i < out.reward_r.size(); ++i)
            diff = std::max(diff, std::abs(out.reward_r[i] - out2.reward_r[i]));
        report("static reduction", ts, tp, diff);
    }

    {
        const StaticTeam team = synthetic_team(3, 10, 10, 22);
        rng::Engine eng(7);
        const PolicyProfile prof = random_profile(eng, team);
        std::vector<double> gs, gp;
        const double ts = time_best_of(3, [&] { gs = serial::g_matrix(team, prof, 1); });
        const double tp = time_best_of(3, [&] { gp = g_matrix(team, prof, 1); });
        double diff = 0.0;
        for (std::size_t i = 0; i < gs.size(); ++i) diff = std::max(diff, std::abs(gs[i] - gp[i]));
        report("best-response scores G_j", ts, tp, diff);
    }

    {
        const StaticTeam team = synthetic_team(2, 64, 32, 33);
        rng::Engine eng(9);
        const PolicyProfile prof = random_profile(eng, team);
        double js = 0.0, jp = 0.0;
        const double ts = time_best_of(3, [&] { js = serial::reward_J(team, prof); });
        const double tp = time_best_of(3, [&] { jp = reward_J(team, prof); });
        report("expected reward J", ts, tp, std::abs(js - jp));
    }

    {
        const StaticTeam team = synthetic_team(2, 4, 8, 44);  // 8^4 * 8^4 ~ 1.7e7 profiles
        BruteForceResult rs, rp;
        const double ts =
            time_best_of(1, [&] { rs = serial::brute_force_J_star(team, 100'000'000); });
        const double tp = time_best_of(1, [&] { rp = brute_force_J_star(team, 100'000'000); });
        report("deterministic brute force", ts, tp, std::abs(rs.j_star - rp.j_star));
    }

    return 0;
}
