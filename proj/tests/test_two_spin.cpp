#include <doctest.h>

#include <cmath>
#include <string>

#include "qthermo/cli/ledger_fields.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/random_ops.hpp"
#include "qthermo/two_spin_model.hpp"
#include "qthermo/two_spin_oracle.hpp"

using namespace qthermo;
using two_spin::TwoSpinParams;

namespace {

constexpr double kOracleRel = 1e-8;
constexpr double kOracleAbs = 1e-10;

void check_ledgers_agree(const ThermoLedger& engine, const two_spin::OracleLedger& oracle,
                         const std::string& context) {
  const auto e = cli::fields_of(engine);
  const auto o = cli::fields_of(oracle);
  for (std::size_t i = 0; i < cli::kLedgerFieldCount; ++i) {
    INFO(context, " field ", cli::kLedgerFieldNames[i], " engine ", e[i], " oracle ", o[i]);
    REQUIRE(cli::agrees(e[i], o[i], kOracleRel, kOracleAbs));
  }
}

}  // namespace

TEST_CASE("parameters are validated") {
  CHECK_THROWS_AS(two_spin::closed_form_statics({0, 0, 0, 0, 0.0}), InvalidSpec);
  CHECK_THROWS_AS(two_spin::closed_form_statics({NAN, 0, 0, 0, 1.0}), InvalidSpec);
  CHECK_THROWS_AS(two_spin::closed_form_statics({0, 0, INFINITY, 0, 1.0}), InvalidSpec);
}

TEST_CASE("decoupled limit") {
  const double eps = 0.9, alpha = 0.8, beta = 1.3;
  const auto st = two_spin::closed_form_statics({eps, alpha, 0.0, 0.0, beta});
  const double zr = 2.0 * std::cosh(0.5 * beta * alpha);
  // sz_S = +1 carries energy +eps/2.
  CHECK(st.x_minus == doctest::Approx(zr * std::exp(-0.5 * beta * eps)).epsilon(1e-14));
  CHECK(st.x_plus == doctest::Approx(zr * std::exp(0.5 * beta * eps)).epsilon(1e-14));
  CHECK(st.h_star[0] == doctest::Approx(0.5 * eps).epsilon(1e-13));
  CHECK(st.h_star[1] == doctest::Approx(-0.5 * eps).epsilon(1e-13));
  CHECK(st.e_star[0] == doctest::Approx(0.5 * eps).epsilon(1e-13));
  CHECK(st.e_star[1] == doctest::Approx(-0.5 * eps).epsilon(1e-13));
}

TEST_CASE("partition function agrees with the generic Gibbs state") {
  const TwoSpinParams p{0.0, 0.8, 1.2, 1.8, 1.0};
  const auto st = two_spin::closed_form_statics(p);
  const double ln_z = gibbs(two_spin::hamiltonian(p), InverseTemperature(p.beta)).log_partition;
  CHECK(std::abs(st.z_sur - std::exp(ln_z)) <= 1e-10);
  CHECK(st.z_sur == doctest::Approx(23.463911596311249295).epsilon(1e-14));

  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = random::stream(101, i);
    const auto q = random::two_spin_params(rng);
    const auto s = two_spin::closed_form_statics(q);
    REQUIRE(s.x_minus > 0.0);
    REQUIRE(s.x_plus > 0.0);
    REQUIRE(std::abs(s.z_sur - s.x_minus - s.x_plus) <= 1e-12 * s.z_sur);
    const double engine = gibbs(two_spin::hamiltonian(q), InverseTemperature(q.beta)).log_partition;
    REQUIRE(std::abs(std::log(s.z_sur) - engine) <= 1e-12);
  }
}

TEST_CASE("zero system field: X_-(gamma) = X_+(-gamma)") {
  for (double gamma : {-1.0, 0.3, 1.2}) {
    const auto st = two_spin::closed_form_statics({0.0, 0.8, gamma, 1.8, 1.0});
    const auto mirrored = two_spin::closed_form_statics({0.0, 0.8, -gamma, 1.8, 1.0});
    CHECK(st.x_minus == doctest::Approx(mirrored.x_plus).epsilon(1e-14));
    CHECK(st.x_plus == doctest::Approx(mirrored.x_minus).epsilon(1e-14));
  }
  // Without zz coupling, or without a reservoir field, H* is proportional to 1.
  for (const auto& p : {two_spin::TwoSpinParams{0.0, 0.8, 0.0, 1.8, 1.0},
                        two_spin::TwoSpinParams{0.0, 0.0, 1.2, 1.8, 1.0}}) {
    const auto st = two_spin::closed_form_statics(p);
    CHECK(st.x_minus == doctest::Approx(st.x_plus).epsilon(1e-14));
    CHECK(st.h_star[0] == doctest::Approx(st.h_star[1]).epsilon(1e-13));
  }
}

TEST_CASE("analytic beta derivative of X matches central differences") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = random::stream(103, i);
    auto p = random::two_spin_params(rng);
    if (i == 0) p = {-0.8, 0.8, 1.2, 0.0, 1.0};  // eta_- = 0
    const double h = 1e-3 * p.beta;
    auto at = [&](double beta) {
      TwoSpinParams q = p;
      q.beta = beta;
      return two_spin::closed_form_statics(q);
    };
    const auto s0 = at(p.beta);
    const auto s1 = at(p.beta + h), s2 = at(p.beta + 2 * h);
    const auto m1 = at(p.beta - h), m2 = at(p.beta - 2 * h);
    const double fd_minus = (-s2.x_minus + 8 * s1.x_minus - 8 * m1.x_minus + m2.x_minus) / (12 * h);
    const double fd_plus = (-s2.x_plus + 8 * s1.x_plus - 8 * m1.x_plus + m2.x_plus) / (12 * h);
    INFO("draw ", i);
    REQUIRE(std::abs(s0.d_beta_x_minus - fd_minus) <= 1e-7 * std::max(1.0, std::abs(fd_minus)));
    REQUIRE(std::abs(s0.d_beta_x_plus - fd_plus) <= 1e-7 * std::max(1.0, std::abs(fd_plus)));
  }
}

TEST_CASE("closed-form H* and E* match the engine operators") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = random::stream(107, i);
    const auto p = random::two_spin_params(rng);
    const auto st = two_spin::closed_form_statics(p);
    const auto bundle = mean_force_bundle(two_spin::hamiltonian(p),
                                          two_spin::reservoir_hamiltonian(p.alpha),
                                          InverseTemperature(p.beta));
    REQUIRE(max_abs_diff(bundle.h_star, Operator::diagonal({st.h_star[0], st.h_star[1]})) <= 1e-10);
    REQUIRE(max_abs_diff(bundle.e_star, Operator::diagonal({st.e_star[0], st.e_star[1]})) <= 1e-7);
  }
}

TEST_CASE("system quench: oracle equals engine") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = random::stream(109, i);
    const auto p = random::two_spin_params(rng);
    const double eps_b = random::uniform(rng, -3.0, 3.0);
    check_ledgers_agree(run_quench(two_spin::system_quench(p, eps_b)),
                        two_spin::system_quench_ledger(p, eps_b), "draw " + std::to_string(i));
  }
}

TEST_CASE("interaction quench: oracle equals engine") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = random::stream(113, i);
    const auto p = random::two_spin_params(rng);
    check_ledgers_agree(
        run_quench(two_spin::interaction_quench(p.epsilon, p.alpha, p.gamma, p.chi, p.beta)),
        two_spin::interaction_quench_ledger(p.epsilon, p.alpha, p.gamma, p.chi, p.beta),
        "draw " + std::to_string(i));
  }
}

TEST_CASE("trivial quenches give zero ledgers") {
  const TwoSpinParams p{0.4, 0.8, 1.2, 1.8, 1.0};
  const auto same = two_spin::system_quench_ledger(p, p.epsilon);
  for (double v : cli::fields_of(same)) CHECK(std::abs(v) <= 1e-14);

  const auto none = two_spin::interaction_quench_ledger(1.0, 5.0, 0.0, 0.0, 1.0);
  for (double v : cli::fields_of(none)) CHECK(std::abs(v) <= 1e-13);
}

TEST_CASE("zz-only system quench: works coincide in closed form") {
  for (double eps_b : {-4.0, -0.8, 0.0, 1.5, 4.0}) {
    const auto l = two_spin::system_quench_ledger({0.0, 0.8, 1.2, 0.0, 1.0}, eps_b);
    CHECK(l.work.diff == doctest::Approx(l.work.hstar).epsilon(1e-13));
    CHECK(l.work.diff == doctest::Approx(l.work.estar).epsilon(1e-13));
  }
}

TEST_CASE("entropy changes of diff and E* agree") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = random::stream(127, i);
    const auto p = random::two_spin_params(rng);
    const double eps_b = random::uniform(rng, -3.0, 3.0);
    const auto sys = run_quench(two_spin::system_quench(p, eps_b));
    const auto inter =
        run_quench(two_spin::interaction_quench(p.epsilon, p.alpha, p.gamma, p.chi, p.beta));
    REQUIRE(std::abs(sys.delta_s->diff - sys.delta_s->estar) <= 1e-10);
    REQUIRE(std::abs(inter.delta_s->diff - inter.delta_s->estar) <= 1e-10);
  }
}

TEST_CASE("gauge-penalty Hamiltonian") {
  const double eps = 0.3, alpha = 0.8, chi = 1.8;
  CHECK_THROWS_AS(two_spin::build_lgt_hamiltonian(eps, alpha, chi, -0.1), InvalidSpec);

  SUBCASE("k = 0 is the uncoupled-zz model") {
    CHECK(max_abs_diff(two_spin::build_lgt_hamiltonian(eps, alpha, chi, 0.0),
                       two_spin::hamiltonian(eps, alpha, 0.0, chi)) == 0.0);
  }
  SUBCASE("spectrum is the gamma = -k spectrum shifted by k") {
    for (double k : {0.5, 2.0, 7.0}) {
      const auto lgt = hermitian_eig(two_spin::build_lgt_hamiltonian(eps, alpha, chi, k));
      const auto ref = hermitian_eig(two_spin::hamiltonian(eps, alpha, -k, chi));
      for (int i = 0; i < 4; ++i) {
        CHECK(lgt.eigenvalues(i) == doctest::Approx(ref.eigenvalues(i) + k).epsilon(1e-13));
      }
    }
  }
  SUBCASE("large penalty confines the Gibbs state") {
    const double k = 50.0, beta = 1.0;
    const auto g = gibbs(two_spin::build_lgt_hamiltonian(eps, alpha, chi, k), InverseTemperature(beta));
    // sz_S sz_R = -1 on |up,down> and |down,up>.
    const double outside = g.state.op()(1, 1).real() + g.state.op()(2, 2).real();
    CHECK(outside <= 4.0 * std::exp(-2.0 * beta * k));
  }
  SUBCASE("identity shift leaves works, heats and dF_S unchanged") {
    const InverseTemperature beta(1.0);
    const Operator h_r = two_spin::reservoir_hamiltonian(alpha);
    for (double k : {0.5, 1.5, 4.0}) {
      const QuenchSpec shifted{two_spin::build_lgt_hamiltonian(eps, alpha, chi, k),
                               two_spin::build_lgt_hamiltonian(-1.1, alpha, chi, k), h_r, beta,
                               QuenchKind::SystemQuench};
      const auto a = run_quench(shifted);
      const auto b = run_quench(two_spin::system_quench({eps, alpha, -k, chi, 1.0}, -1.1));
      const auto fa = cli::fields_of(a), fb = cli::fields_of(b);
      for (std::size_t i = 0; i < cli::kLedgerFieldCount; ++i) {
        INFO("k ", k, " field ", cli::kLedgerFieldNames[i]);
        CHECK(std::abs(fa[i] - fb[i]) <= 1e-9 * std::max(1.0, std::abs(fb[i])));
      }
      const auto f_lgt = free_energies(shifted.h_sur_a, h_r, beta);
      const auto f_ref = free_energies(two_spin::hamiltonian(eps, alpha, -k, chi), h_r, beta);
      CHECK(f_lgt.sur == doctest::Approx(f_ref.sur + k).epsilon(1e-12));
    }
  }
}
