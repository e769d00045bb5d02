#include "qthermo/cli/audit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "qthermo/random_ops.hpp"
#include "qthermo/two_spin_model.hpp"

namespace qthermo::cli {
namespace {

enum class Suite : std::uint64_t { Quench = 1, WeakCoupling, GlobalGibbs, Commuting, Equilibrium, TwoSpin };

random::Rng suite_stream(std::uint64_t seed, Suite suite, std::uint64_t draw) {
  return random::stream(seed, (static_cast<std::uint64_t>(suite) << 32) | draw);
}

const char* kind_name(QuenchKind kind) {
  switch (kind) {
    case QuenchKind::SystemQuench:
      return "system";
    case QuenchKind::InteractionQuench:
      return "interaction";
    case QuenchKind::General:
      break;
  }
  return "general";
}

class Tracker {
 public:
  Tracker(std::string suite, std::string name, double tolerance)
      : result_{std::move(suite), std::move(name), 0.0, tolerance, ""} {}

  void see(double residual, const std::function<std::string()>& describe) {
    if (std::isnan(residual)) residual = INFINITY;
    if (residual > result_.worst || result_.worst_case.empty()) {
      result_.worst = std::max(result_.worst, residual);
      result_.worst_case = describe();
    }
  }

  InvariantResult take() { return std::move(result_); }

 private:
  InvariantResult result_;
};

struct Draw {
  std::uint64_t seed;
  std::uint64_t index;
  std::string what;
  std::size_t d_r;
  double beta;

  std::string describe() const {
    return fmt::format("seed={} draw={} {} d_S=2 d_R={} beta={:.17g}", seed, index, what, d_r,
                       beta);
  }
};

Draw make_draw(const RunConfig& config, random::Rng& rng, std::uint64_t i, std::string what) {
  const auto& a = config.audit;
  const std::size_t d_r = 2 + i % (a.max_d_r - 1);
  return {config.seed, i, std::move(what), d_r, random::uniform(rng, a.beta_min, a.beta_max)};
}

void quench_suite(const RunConfig& config, std::vector<InvariantResult>& out) {
  Tracker rel_diff("quench", "relative_entropy_diff", config.tol("relative_entropy"));
  Tracker rel_hstar("quench", "relative_entropy_hstar", config.tol("relative_entropy"));
  Tracker first_law("quench", "first_law", config.tol("first_law"));
  Tracker diss_diff("quench", "second_law_diff", config.tol("diss_floor"));
  Tracker diss_hstar("quench", "second_law_hstar", config.tol("diss_floor"));
  Tracker heat_diff("quench", "heat_bound_diff", config.tol("heat_bound"));
  Tracker heat_hstar("quench", "heat_bound_hstar", config.tol("heat_bound"));
  Tracker* all[] = {&rel_diff, &rel_hstar, &first_law, &diss_diff,
                    &diss_hstar, &heat_diff, &heat_hstar};

  constexpr QuenchKind kinds[] = {QuenchKind::SystemQuench, QuenchKind::InteractionQuench,
                                  QuenchKind::General};
  for (int n = 0; n < config.audit.quenches; ++n) {
    const auto i = static_cast<std::uint64_t>(n);
    auto rng = suite_stream(config.seed, Suite::Quench, i);
    const QuenchKind kind = kinds[i % 3];
    const Draw draw = make_draw(config, rng, i, std::string("kind=") + kind_name(kind));
    const auto describe = [&] { return draw.describe(); };
    try {
      const auto spec =
          random::quench(rng, kind, {2, draw.d_r, draw.beta, config.audit.coupling_scale});
      const auto ledger = run_quench(spec);
      const auto audit = second_law_audit(ledger, config.tol("second_law"));
      rel_diff.see(audit.residual_diff, describe);
      rel_hstar.see(audit.residual_hstar, describe);
      const auto w = ledger.work.as_array(), q = ledger.heat.as_array();
      const auto du = ledger.delta_u.as_array();
      double worst_first = 0.0;
      for (std::size_t k = 0; k < 3; ++k) worst_first = std::max(worst_first, std::abs(w[k] + q[k] - du[k]));
      first_law.see(worst_first, describe);
      diss_diff.see(std::max(0.0, -ledger.dissipated.diff), describe);
      diss_hstar.see(std::max(0.0, -ledger.dissipated.hstar), describe);
      const double inv_beta = 1.0 / ledger.beta;
      heat_diff.see(std::max(0.0, ledger.heat.diff - inv_beta * ledger.delta_s->diff), describe);
      heat_hstar.see(std::max(0.0, ledger.heat.hstar - inv_beta * ledger.delta_s->hstar), describe);
    } catch (const Error& e) {
      for (Tracker* t : all) t->see(INFINITY, [&] { return draw.describe() + " error: " + e.what(); });
    }
  }
  for (Tracker* t : all) out.push_back(t->take());
}

void weak_coupling_suite(const RunConfig& config, std::vector<InvariantResult>& out) {
  Tracker hstar("weak_coupling", "hstar_equals_hs", config.tol("weak_hstar"));
  Tracker estar("weak_coupling", "estar_equals_hs", config.tol("weak_estar"));
  Tracker udiff("weak_coupling", "udiff_equals_us0", config.tol("weak_udiff"));
  for (int n = 0; n < config.audit.samples; ++n) {
    const auto i = static_cast<std::uint64_t>(n);
    auto rng = suite_stream(config.seed, Suite::WeakCoupling, i);
    const Draw draw = make_draw(config, rng, i, "V=0");
    const auto describe = [&] { return draw.describe(); };
    const InverseTemperature beta(draw.beta);
    const Operator h_s = random::hermitian(rng, 2, 1.0);
    const Operator h_r = random::hermitian(rng, draw.d_r, 1.0);
    const Operator h_sur = bipartite_hamiltonian(h_s, h_r, Operator::zero({2, draw.d_r}));
    const auto bundle = mean_force_bundle(h_sur, h_r, beta);
    hstar.see(max_abs_diff(bundle.h_star, h_s), describe);
    estar.see(max_abs_diff(bundle.e_star, h_s), describe);
    const double u_s0 = expectation(h_s, gibbs(h_s, beta).state.op());
    udiff.see(std::abs(internal_energy_diff(gibbs(h_sur, beta).state, h_sur, h_r, beta) - u_s0),
              describe);
  }
  out.push_back(hstar.take());
  out.push_back(estar.take());
  out.push_back(udiff.take());
}

void global_gibbs_suite(const RunConfig& config, std::vector<InvariantResult>& out) {
  Tracker u("global_gibbs", "uestar_equals_udiff", config.tol("global_gibbs"));
  for (int n = 0; n < config.audit.samples; ++n) {
    const auto i = static_cast<std::uint64_t>(n);
    auto rng = suite_stream(config.seed, Suite::GlobalGibbs, i);
    const Draw draw = make_draw(config, rng, i, "coupled");
    const InverseTemperature beta(draw.beta);
    const Operator h_s = random::hermitian(rng, 2, 1.0);
    const Operator h_r = random::hermitian(rng, draw.d_r, 1.0);
    const Operator v = random::hermitian(rng, 2 * draw.d_r, config.audit.coupling_scale);
    const Operator h_sur = bipartite_hamiltonian(h_s, h_r, v);
    const auto pi = gibbs(h_sur, beta).state;
    const DensityMatrix pi_s(partial_trace(pi.op(), Factor::S).hermitian_part());
    const auto e_star = effective_energy_operator(h_sur, h_r, beta);
    u.see(std::abs(internal_energy_estar(pi_s, e_star) - internal_energy_diff(pi, h_sur, h_r, beta)),
          [&] { return draw.describe(); });
  }
  out.push_back(u.take());
}

void commuting_suite(const RunConfig& config, std::vector<InvariantResult>& out) {
  Tracker hstar("commuting", "wdiff_equals_whstar", config.tol("commuting_hstar"));
  Tracker estar("commuting", "wdiff_equals_westar", config.tol("commuting_estar"));
  for (int n = 0; n < config.audit.samples; ++n) {
    const auto i = static_cast<std::uint64_t>(n);
    auto rng = suite_stream(config.seed, Suite::Commuting, i);
    const Draw draw = make_draw(config, rng, i, "commuting system quench");
    const auto ledger = run_quench(random::commuting_system_quench(
        rng, {2, draw.d_r, draw.beta, config.audit.coupling_scale}));
    const auto describe = [&] { return draw.describe(); };
    hstar.see(std::abs(ledger.work.diff - ledger.work.hstar), describe);
    estar.see(std::abs(ledger.work.diff - ledger.work.estar), describe);
  }
  out.push_back(hstar.take());
  out.push_back(estar.take());
}

void equilibrium_suite(const RunConfig& config, std::vector<InvariantResult>& out) {
  Tracker factor("equilibrium", "factorization", config.tol("factorization"));
  Tracker reduced("equilibrium", "reduced_state", config.tol("reduced_state"));
  for (int n = 0; n < config.audit.samples; ++n) {
    const auto i = static_cast<std::uint64_t>(n);
    auto rng = suite_stream(config.seed, Suite::Equilibrium, i);
    const Draw draw = make_draw(config, rng, i, "coupled");
    const InverseTemperature beta(draw.beta);
    const Operator h_r = random::hermitian(rng, draw.d_r, 1.0);
    const Operator h_sur = bipartite_hamiltonian(
        random::hermitian(rng, 2, 1.0), h_r,
        random::hermitian(rng, 2 * draw.d_r, config.audit.coupling_scale));
    const auto describe = [&] { return draw.describe(); };
    const auto f = free_energies(h_sur, h_r, beta);
    factor.see(beta.value() * std::abs(f.sur - f.s - f.r), describe);
    const auto pi_s = partial_trace(gibbs(h_sur, beta).state.op(), Factor::S);
    const auto from_h_star = gibbs(mean_force_hamiltonian(h_sur, h_r, beta), beta).state;
    reduced.see(max_abs_diff(from_h_star.op(), pi_s), describe);
  }
  out.push_back(factor.take());
  out.push_back(reduced.take());
}

void two_spin_suite(const RunConfig& config, std::vector<InvariantResult>& out) {
  Tracker entropy("two_spin", "dsdiff_equals_dsestar", config.tol("entropy_match"));
  for (int n = 0; n < config.audit.samples; ++n) {
    const auto i = static_cast<std::uint64_t>(n);
    auto rng = suite_stream(config.seed, Suite::TwoSpin, i);
    const auto p = random::two_spin_params(rng);
    const double eps_b = random::uniform(rng, -3.0, 3.0);
    const auto describe = [&] {
      return fmt::format("seed={} draw={} eps={:.17g} alpha={:.17g} gamma={:.17g} chi={:.17g} "
                         "beta={:.17g} eps_b={:.17g}",
                         config.seed, i, p.epsilon, p.alpha, p.gamma, p.chi, p.beta, eps_b);
    };
    const auto sys = run_quench(two_spin::system_quench(p, eps_b));
    const auto inter =
        run_quench(two_spin::interaction_quench(p.epsilon, p.alpha, p.gamma, p.chi, p.beta));
    entropy.see(std::max(std::abs(sys.delta_s->diff - sys.delta_s->estar),
                         std::abs(inter.delta_s->diff - inter.delta_s->estar)),
                describe);
  }
  out.push_back(entropy.take());
}

}  // namespace

bool AuditReport::pass() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass(); });
}

std::string AuditReport::text() const {
  std::string out = fmt::format("qthermo audit seed={}\n", seed);
  for (const auto& r : results) {
    out += fmt::format("{} {} worst={:.3e} tol={:.1e} {}\n", r.suite, r.name, r.worst, r.tolerance,
                       r.pass() ? "PASS" : "FAIL");
    if (!r.pass()) out += "  failing case: " + r.worst_case + "\n";
  }
  out += pass() ? "overall PASS\n" : "overall FAIL\n";
  return out;
}

AuditReport run_audit(const RunConfig& config) {
  AuditReport report;
  report.seed = config.seed;
  quench_suite(config, report.results);
  weak_coupling_suite(config, report.results);
  global_gibbs_suite(config, report.results);
  commuting_suite(config, report.results);
  equilibrium_suite(config, report.results);
  two_spin_suite(config, report.results);
  return report;
}

}  // namespace qthermo::cli
