#include <doctest.h>

#include <cmath>

#include "adwords/duals.hpp"
#include "adwords/report.hpp"
#include "adwords/session.hpp"

using namespace adwords;

namespace {

// {0} under s = {0,1}; {1} under s
Instance nested() {
  return Instance(Mode::Laminar, 2,
                  {Bidder{"u", {{"{0}", {0}, Rational(1)}, {"{1}", {1}, Rational(3)}, {"s", {0, 1}, Rational(2)}}}},
                  {});
}

Impression imp(std::string id, std::vector<std::vector<Bid>> bids) { return Impression{std::move(id), std::move(bids)}; }

}  // namespace

TEST_CASE("gamma maps [0, 1] onto [0, 1]") {
  CHECK(gamma_of(Rational(0)) == 0.0);
  CHECK(gamma_of(Rational(1)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_of(Rational(1, 2)) == doctest::Approx((std::exp(0.5) - 1) / (std::exp(1.0) - 1)).epsilon(1e-15));
  CHECK(kRho == doctest::Approx(1.5819767068693265).epsilon(1e-15));
}

TEST_CASE("gamma term telescopes toward the roots") {
  const Instance inst = nested();
  const LaminarForest forest(inst, 0);
  // B{0}(γ{0} − γs) + B{1}(γ{1} − γs) + Bs·γs
  CHECK(gamma_term({1.0, 0.0, 0.5}, inst, 0, forest) == doctest::Approx(1 * 0.5 + 3 * -0.5 + 2 * 0.5));
  DualPrime dual;
  dual.sigma = {0.25, 0.5};
  dual.gamma = {{0.0, 0.0, 0.0}};
  const std::vector<LaminarForest> forests{forest};
  CHECK(dual_prime_objective(dual, inst, forests) == doctest::Approx(0.75));
}

TEST_CASE("ratio audit passes at the boundary and fails above it") {
  CHECK(audit_ratio(Rational(1), kRho).pass);
  CHECK(audit_ratio(Rational(0), 0.0).pass);
  const AuditResult bad = audit_ratio(Rational(1), 2.0);
  CHECK_FALSE(bad.pass);
  CHECK(bad.residual > 0);
  CHECK_FALSE(bad.detail.empty());
}

TEST_CASE("greedy fit sets alpha only on the topmost tight constraint") {
  const Instance inst = nested();
  const std::vector<LaminarForest> forests{LaminarForest(inst, 0)};
  const std::vector<Rational> earned{Rational(1), Rational(1)};
  const DualFit fit = greedy_dual_fit(earned, {{true, false, true}}, forests);
  CHECK(fit.alpha[0] == std::vector<int>{0, 0, 1});
  CHECK(fit.sigma == earned);
  const DualFit lone = greedy_dual_fit(earned, {{true, false, false}}, forests);
  CHECK(lone.alpha[0] == std::vector<int>{1, 0, 0});
}

TEST_CASE("greedy fit audit: objective exactly twice the primal passes") {
  const Instance inst(Mode::Laminar, 1, {Bidder{"u", {{"{0}", {0}, Rational(1)}}}}, {});
  const std::vector<Impression> imps{imp("v", {{Bid{0, Rational(1)}}})};
  DualFit fit;
  fit.sigma = {Rational(1)};
  fit.alpha = {{1}};
  const DualFitAudit audit = audit_dualfit(fit, inst, imps, Rational(1));
  CHECK(audit.objective == Rational(2));
  CHECK(audit.pass());
  CHECK_FALSE(audit_dualfit(fit, inst, imps, Rational(99, 100)).ratio_ok);

  fit.sigma = {Rational(0)};
  fit.alpha = {{0}};
  const DualFitAudit short_fit = audit_dualfit(fit, inst, imps, Rational(1));
  CHECK_FALSE(short_fit.feasible);
  CHECK(short_fit.worst_slack == Rational(-1));
}

TEST_CASE("general ratio bound is nine at p = 1") {
  CHECK(lg_2p2(1) == doctest::Approx(2.0));
  CHECK(lg_2p2(0) == doctest::Approx(2.0));
  CHECK(lg_2p2(3) == doctest::Approx(3.0));
  CHECK(adgeneral_ratio_bound(Rational(1), 9.0, 1).pass);
  CHECK_FALSE(adgeneral_ratio_bound(Rational(1), 9.01, 1).pass);
  CHECK(adgeneral_ratio_bound(Rational(2), 13.0 * 2, 3).pass);
}

TEST_CASE("laminar run certifies itself on a small instance") {
  const Instance inst = with_impressions(
      nested(), {imp("a", {{Bid{0, Rational(1, 4)}}}), imp("b", {{Bid{0, Rational(1, 4)}, Bid{1, Rational(1, 4)}}}),
                 imp("c", {{Bid{1, Rational(1, 4)}}}), imp("d", {{Bid{0, Rational(1, 4)}}})});
  SessionOptions opts;
  opts.audit = AuditMode::Paranoid;
  const Report report = run_online(inst, Strategy::AdLaminar, opts);
  REQUIRE(report.ratio_audit.has_value());
  REQUIRE(report.feasibility.has_value());
  CHECK(report.ratio_audit->pass);
  CHECK(report.feasibility->pass);
  CHECK(report.feasibility->brute_force_agrees);
  CHECK(report.primal == Rational(5, 4));
  CHECK(report.audit_failures.empty());
}

TEST_CASE("feasibility audit flags a dual that is too small") {
  const Instance inst = nested();
  const std::vector<LaminarForest> forests{LaminarForest(inst, 0)};
  const std::vector<Impression> imps{imp("v", {{Bid{0, Rational(1)}}})};
  DualPrime dual;
  dual.sigma = {0.5};
  dual.gamma = {{0.0, 0.0, 0.0}};
  dual.g = {{Rational(0), Rational(0), Rational(0)}};
  const FeasibilityAudit audit = audit_feasibility_dprime(dual, inst, imps, forests);
  CHECK_FALSE(audit.pass);
  CHECK(audit.worst_residual == doctest::Approx(0.5));
  dual.sigma = {1.0};
  CHECK(audit_feasibility_dprime(dual, inst, imps, forests).pass);
  // γ must not grow toward the roots
  dual.gamma = {{0.0, 0.0, 0.5}};
  CHECK_FALSE(audit_feasibility_dprime(dual, inst, imps, forests).pass);
}
