// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "qthermo/cli/commands.hpp"
#include "qthermo/cli/ledger_fields.hpp"
#include "qthermo/cli/sweep.hpp"
#include "qthermo/random_ops.hpp"
#include "qthermo/two_spin_model.hpp"

using namespace qthermo;

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kSeed = 7;

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  if (!pass) ++failures;
  std::cout << fmt::format("[{}] {:>2} {}\n", pass ? "PASS" : "FAIL", id, what);
}

random::Rng rng_for(int criterion, std::uint64_t draw) {
  return random::stream(kSeed, (static_cast<std::uint64_t>(criterion) << 32) | draw);
}

DensityMatrix reduced(const DensityMatrix& rho) {
  return DensityMatrix(partial_trace(rho.op(), Factor::S).hermitian_part());
}

cli::SweepSummary panel(const std::string& name) {
  const auto config = cli::load_config(fs::path(QTHERMO_CONFIG_DIR) / name);
  return cli::summarize(cli::run_sweep(config), config);
}

void oracle_equivalence() {
  constexpr double rel = 1e-8, abs = 1e-10;
  double worst = 0.0;
  std::string worst_field;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = rng_for(1, i);
    const auto p = random::two_spin_params(rng);
    const double eps_b = random::uniform(rng, -3.0, 3.0);
    const auto sys = cli::compare_fields(cli::fields_of(run_quench(two_spin::system_quench(p, eps_b))),
                                         cli::fields_of(two_spin::system_quench_ledger(p, eps_b)),
                                         rel, abs);
    const auto inter = cli::compare_fields(
        cli::fields_of(
            run_quench(two_spin::interaction_quench(p.epsilon, p.alpha, p.gamma, p.chi, p.beta))),
        cli::fields_of(
            two_spin::interaction_quench_ledger(p.epsilon, p.alpha, p.gamma, p.chi, p.beta)),
        rel, abs);
    for (const auto& a : {sys, inter}) {
      if (a.worst_excess > worst) {
        worst = a.worst_excess;
        worst_field = std::string(cli::kLedgerFieldNames[a.worst_field]);
      }
    }
  }
  report(1, worst <= 1.0,
         fmt::format("oracle equivalence, 100 draws per quench kind: worst |e-o|/max(1e-8|o|, 1e-10) "
                     "= {:.3g} ({}) <= 1",
                     worst, worst_field));
}

void panel_a() {
  const auto s = panel("sweep_system.json");
  const bool pass =
      s.min_dissipated[0] >= -1e-10 && s.min_dissipated[1] >= -1e-10 && s.min_dissipated[2] < -1e-6;
  report(2, pass,
         fmt::format("system quench chi=1.8 over eps_B in [-5,5]: min diss diff={:.3g}, H*={:.3g} "
                     "(>= -1e-10); E*={:.4g} (< -1e-6)",
                     s.min_dissipated[0], s.min_dissipated[1], s.min_dissipated[2]));
}

void panel_b() {
  const auto s = panel("sweep_interaction.json");
  const bool pass =
      s.min_dissipated[0] >= -1e-10 && s.min_dissipated[1] >= -1e-10 && s.min_dissipated[2] < -1e-6;
  report(3, pass,
         fmt::format("interaction quench over gamma_B in [-3,3]: min diss diff={:.3g}, H*={:.3g} "
                     "(>= -1e-10); E*={:.4g} (< -1e-6)",
                     s.min_dissipated[0], s.min_dissipated[1], s.min_dissipated[2]));
}

void panel_c() {
  const auto s = panel("sweep_system_chi0.json");
  const double min_diss = *std::min_element(s.min_dissipated.begin(), s.min_dissipated.end());
  const bool pass = s.max_work_spread <= 1e-7 && min_diss >= -1e-10;
  report(4, pass,
         fmt::format("system quench chi=0: max pairwise work spread {:.3g} (<= 1e-7), min diss {:.3g} "
                     "(>= -1e-10)",
                     s.max_work_spread, min_diss));
}

random::QuenchDraw quench_draw(random::Rng& rng, std::uint64_t i) {
  return {2, 2 + i % 3, random::uniform(rng, 0.3, 2.0), 1.0};
}

QuenchKind quench_kind(std::uint64_t i) {
  constexpr QuenchKind kinds[] = {QuenchKind::SystemQuench, QuenchKind::InteractionQuench,
                                  QuenchKind::General};
  return kinds[i % 3];
}

struct HeatBound {
  double diff = -INFINITY;
  double hstar = -INFINITY;
};

// Returns the worst Q - dS/beta over the same quenches, used by criterion 9.
HeatBound relative_entropy() {
  HeatBound heat;
  double res_diff = 0.0, res_hstar = 0.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = rng_for(5, i);
    const auto draw = quench_draw(rng, i);
    const auto ledger = run_quench(random::quench(rng, quench_kind(i), draw));
    const auto audit = second_law_audit(ledger);
    res_diff = std::max(res_diff, audit.residual_diff);
    res_hstar = std::max(res_hstar, audit.residual_hstar);
    heat.diff = std::max(heat.diff, ledger.heat.diff - ledger.delta_s->diff / ledger.beta);
    heat.hstar = std::max(heat.hstar, ledger.heat.hstar - ledger.delta_s->hstar / ledger.beta);
  }
  report(5, res_diff <= 1e-8 && res_hstar <= 1e-8,
         fmt::format("relative-entropy identities, 200 quenches up to 2x4: residual diff {:.3g}, "
                     "H* {:.3g} (<= 1e-8)",
                     res_diff, res_hstar));
  return heat;
}

void factorization_and_bounds(const HeatBound& heat) {
  double factorization = 0.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = rng_for(9, i);
    const std::size_t d_r = 2 + i % 3;
    const InverseTemperature beta(random::uniform(rng, 0.3, 2.0));
    const Operator h_r = random::hermitian(rng, d_r, 1.0);
    const Operator h = bipartite_hamiltonian(random::hermitian(rng, 2, 1.0), h_r,
                                             random::hermitian(rng, 2 * d_r, 1.0));
    const auto f = free_energies(h, h_r, beta);
    factorization = std::max(factorization, beta.value() * std::abs(f.sur - f.s - f.r));
  }
  double entropy = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = rng_for(9, 1000 + i);
    const auto p = random::two_spin_params(rng);
    const double eps_b = random::uniform(rng, -3.0, 3.0);
    const auto sys = run_quench(two_spin::system_quench(p, eps_b));
    const auto inter =
        run_quench(two_spin::interaction_quench(p.epsilon, p.alpha, p.gamma, p.chi, p.beta));
    entropy = std::max({entropy, std::abs(sys.delta_s->diff - sys.delta_s->estar),
                        std::abs(inter.delta_s->diff - inter.delta_s->estar)});
  }
  const bool pass9 = factorization <= 1e-9 && heat.diff <= 1e-9 && heat.hstar <= 1e-9 &&
                     entropy <= 1e-10;
  report(9, pass9,
         fmt::format("factorization {:.3g} (<= 1e-9); max Q - dS/beta diff {:.3g}, H* {:.3g} "
                     "(<= 1e-9); two-spin |dS_diff - dS_E*| {:.3g} (<= 1e-10)",
                     factorization, heat.diff, heat.hstar, entropy));
}

void weak_coupling() {
  double hstar = 0.0, estar = 0.0, udiff = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = rng_for(6, i);
    const std::size_t d_r = 2 + i % 3;
    const InverseTemperature beta(random::uniform(rng, 0.3, 2.0));
    const Operator h_s = random::hermitian(rng, 2, 1.0);
    const Operator h_r = random::hermitian(rng, d_r, 1.0);
    const Operator h = bipartite_hamiltonian(h_s, h_r, Operator::zero({2, d_r}));
    const auto bundle = mean_force_bundle(h, h_r, beta);
    hstar = std::max(hstar, max_abs_diff(bundle.h_star, h_s));
    estar = std::max(estar, max_abs_diff(bundle.e_star, h_s));
    const double u_s0 = expectation(h_s, gibbs(h_s, beta).state.op());
    udiff = std::max(udiff, std::abs(internal_energy_diff(gibbs(h, beta).state, h, h_r, beta) - u_s0));
  }
  report(6, hstar <= 1e-10 && estar <= 1e-7 && udiff <= 1e-9,
         fmt::format("V=0: |H*-H_S| {:.3g} (<= 1e-10), |E*-H_S| {:.3g} (<= 1e-7), |U_diff-U_S^0| "
                     "{:.3g} (<= 1e-9)",
                     hstar, estar, udiff));
}

void global_gibbs() {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = rng_for(7, i);
    const std::size_t d_r = 2 + i % 3;
    const InverseTemperature beta(random::uniform(rng, 0.3, 2.0));
    const Operator h_r = random::hermitian(rng, d_r, 1.0);
    const Operator h = bipartite_hamiltonian(random::hermitian(rng, 2, 1.0), h_r,
                                             random::hermitian(rng, 2 * d_r, 1.0));
    const auto pi = gibbs(h, beta).state;
    const double u_e = internal_energy_estar(reduced(pi), effective_energy_operator(h, h_r, beta));
    worst = std::max(worst, std::abs(u_e - internal_energy_diff(pi, h, h_r, beta)));
  }
  report(7, worst <= 1e-6,
         fmt::format("global Gibbs, 200 coupled Hamiltonians: |U_E* - U_diff| {:.3g} (<= 1e-6)", worst));
}

void commuting() {
  double hstar = 0.0, estar = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = rng_for(8, i);
    const auto draw = quench_draw(rng, i);
    const auto ledger = run_quench(random::commuting_system_quench(rng, draw));
    hstar = std::max(hstar, std::abs(ledger.work.diff - ledger.work.hstar));
    estar = std::max(estar, std::abs(ledger.work.diff - ledger.work.estar));
  }
  report(8, hstar <= 1e-9 && estar <= 1e-7,
         fmt::format("commuting system quenches: |W_diff - W_H*| {:.3g} (<= 1e-9), |W_diff - W_E*| "
                     "{:.3g} (<= 1e-7)",
                     hstar, estar));
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void determinism() {
  const fs::path dir = fs::current_path() / "acceptance_runs";
  fs::create_directories(dir);
  const std::string configs = QTHERMO_CONFIG_DIR;
  std::ostringstream sink;
  bool ok = true;
  std::string outputs[2][3];
  for (int run = 0; run < 2; ++run) {
    const std::string tag = std::to_string(run);
    const auto audit = (dir / ("audit_" + tag + ".txt")).string();
    const auto sweep = (dir / ("sweep_" + tag + ".csv")).string();
    ok = ok && cli::execute({cli::Mode::Audit, configs + "/audit.json", 1, audit, {}}, sink, sink) == 0;
    ok = ok && cli::execute({cli::Mode::Sweep, configs + "/sweep_system.json", 1, sweep, {}}, sink, sink) == 0;
    outputs[run][0] = slurp(audit);
    outputs[run][1] = slurp(sweep);
    outputs[run][2] = slurp(sweep + ".summary.json");
  }
  bool same = true;
  for (int k = 0; k < 3; ++k) same = same && !outputs[0][k].empty() && outputs[0][k] == outputs[1][k];
  report(10, ok && same,
         fmt::format("audit (seed 1) and sweep outputs byte-identical across two runs: {} ({} + {} + "
                     "{} bytes)",
                     same ? "yes" : "no", outputs[0][0].size(), outputs[0][1].size(),
                     outputs[0][2].size()));
}

}  // namespace

int main() {
  try {
    oracle_equivalence();
    panel_a();
    panel_b();
    panel_c();
    const HeatBound heat = relative_entropy();
    weak_coupling();
    global_gibbs();
    commuting();
    factorization_and_bounds(heat);
    determinism();
  } catch (const std::exception& e) {
    std::cout << "[FAIL] acceptance run aborted: " << e.what() << "\n";
    return 1;
  }
  std::cout << (failures == 0 ? "all criteria passed\n" : fmt::format("{} criteria failed\n", failures));
  return failures == 0 ? 0 : 1;
}
