#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "shrinkdist/impossibility.hpp"

using namespace shrinkdist;
using Catch::Matchers::WithinAbs;

namespace {

constexpr EstimatorKind kAll[] = {EstimatorKind::Hard, EstimatorKind::Soft, EstimatorKind::Scad};

const TuningPath kConsistent(1.0, 0.25);

}  // namespace

TEST_CASE("two-point problem") {
  const TwoPointProblem p(100, 0.5, 0.2, TuningPlan(0.1), EstimatorKind::Hard);
  CHECK(p.theta_plus() == -(0.5 + 0.2) / 10.0);
  CHECK(p.theta_minus() == -(0.5 - 0.2) / 10.0);
  CHECK_NOTHROW(p.check_radius(1.0));
  CHECK_THROWS(p.check_radius(0.7));
  CHECK_THROWS(TwoPointProblem(0, 0.0, 0.1, TuningPlan(0.1), EstimatorKind::Hard));
  CHECK_THROWS(TwoPointProblem(10, 0.0, 0.0, TuningPlan(0.1), EstimatorKind::Hard));
}

TEST_CASE("estimand gap") {
  const TuningPlan t196(0.196);
  const auto g = estimand_gap(TwoPointProblem(100, 0.0, 1e-4, t196, EstimatorKind::Hard));
  CHECK_THAT(g.gap, WithinAbs(2.0 * oracle::Phi_mp(1.96) - 1.0, 1e-3));
  CHECK_THAT(g.leading_term, WithinAbs(oracle::Phi_mp(-1e-4 + 1.96) - oracle::Phi_mp(-1e-4 - 1.96), 1e-14));
  CHECK_THAT(g.remainder, WithinAbs(g.gap - g.leading_term, 1e-16));

  const auto z = estimand_gap(TwoPointProblem(100, 0.0, 1e-4, TuningPlan(1e-7), EstimatorKind::Hard));
  CHECK(std::abs(z.gap) < 1e-5);

  struct C {
    long long n;
    double t, eta;
  };
  for (const C& c : {C{100, 0.0, 0.196}, C{40, 0.7, 0.05}, C{10000, -1.2, 0.1}})
    for (EstimatorKind k : kAll) {
      double prev = std::numeric_limits<double>::infinity();
      for (double d = 0.1; d >= 1e-4; d *= 0.5) {
        const auto e = estimand_gap(TwoPointProblem(c.n, c.t, d, TuningPlan(c.eta), k));
        CHECK(std::abs(e.remainder) <= prev + 1e-15);
        prev = std::abs(e.remainder);
      }
      CHECK(prev < 0.01);
    }
}

TEST_CASE("epsilon range and the two-point bound") {
  CHECK_THAT(epsilon_range(100, 0.0, TuningPlan(0.196)), WithinAbs(0.475, 1e-4));
  CHECK_THAT(epsilon_range(100, 0.0, TuningPlan(0.196)), WithinAbs(oracle::Phi_mp(1.96) - 0.5, 1e-14));
  CHECK(epsilon_range(100, 0.0, TuningPlan(1.0)) >= 0.5 - 1e-16);
  CHECK(epsilon_range(100, 0.0, TuningPlan(1.0)) <= 0.5);

  for (double t : {-1.0, 0.0, 0.4}) {
    double prev = 0.0;
    for (double eta = 0.001; eta < 1.0; eta *= 1.3) {
      const double r = epsilon_range(400, t, TuningPlan(eta));
      CHECK(r >= prev);
      prev = r;
    }
  }

  for (long long n : {1LL, 100LL, 1000000LL}) {
    const TwoPointProblem p(n, 0.3, 1e-6, TuningPlan(0.1), EstimatorKind::Hard);
    const double b = 0.5 * (1.0 - gaussian_tv(n, p.theta_plus(), p.theta_minus()));
    CHECK(b >= 0.4999);
    CHECK(b <= 0.5);
    CHECK(0.5 * (1.0 - gaussian_tv(n, p.theta_plus(), p.theta_plus())) == 0.5);
  }

  for (EstimatorKind k : kAll) {
    const auto lb = minimax_lower_bound(TwoPointProblem(100, 0.0, 0.1, TuningPlan(0.196), k));
    CHECK_THAT(lb.epsilon_range, WithinAbs(oracle::Phi_mp(1.96) - 0.5, 1e-14));
    CHECK(lb.bound > 0.4999);
    CHECK(lb.bound <= 0.5);
    CHECK(lb.witness_delta > 0.0);
  }
}

TEST_CASE("rescaled lower bound") {
  const long long n = 100;
  const TuningPlan tuning(0.5);
  for (double t : {-0.9, -0.3, 0.0, 0.6}) {
    const auto lb = rescaled_lower_bound(n, t, tuning);
    CHECK_THAT(lb.epsilon_range, WithinAbs(0.5 * (oracle::Phi_mp(5.0 * (t + 1.0)) - oracle::Phi_mp(5.0 * (t - 1.0))), 1e-6));
    const double s = 5.0 * t;
    const auto direct = minimax_lower_bound(TwoPointProblem(n, s, 0.1, tuning, EstimatorKind::Hard), 0.9 * lb.epsilon_range);
    CHECK(lb.bound == direct.bound);
    CHECK(lb.witness_delta == direct.witness_delta);
  }

  // Beyond |t| = 1 the range vanishes and the constant estimate 1 is uniformly accurate.
  const long long big = 1000000;
  const TuningPlan tb = kConsistent.plan(big);
  CHECK(rescaled_lower_bound(big, 1.5, tb).epsilon_range < 1e-10);
  for (EstimatorKind k : kAll) {
    double worst = 0.0;
    for (double z = -1.99; z < 2.0; z += 0.01)
      worst = std::max(worst, 1.0 - rescaled_dist(k, ModelPoint(big, z * tb.eta()), tb).cdf(1.5));
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("cdf estimator specifications") {
  CHECK(CdfEstimatorSpec::pretest().declared_consistent());
  CHECK(CdfEstimatorSpec::m_out_of_n().declared_consistent());
  CHECK_FALSE(CdfEstimatorSpec::full_bootstrap().declared_consistent());
  CHECK_FALSE(CdfEstimatorSpec::oracle().declared_consistent());
  CHECK(CdfEstimatorSpec::m_out_of_n().m(10000) == 100);
  CHECK(CdfEstimatorSpec::m_out_of_n().m(10001) == 101);
  CHECK(CdfEstimatorSpec::full_bootstrap().m(12345) == 12345);
  CHECK_THROWS(CdfEstimatorSpec::pretest(0.5));
  CHECK_THROWS(CdfEstimatorSpec::m_out_of_n(0.0));
  CHECK(to_string(CdfEstimatorSpec::Kind::MOutOfNBootstrap) == "m-out-of-n");
}

TEST_CASE("bootstrap estimate equals the law of the bootstrap root") {
  // Monte Carlo over ybar* ~ N(ybar, 1/m) of sqrt(m)(estimate*(eta_m) - estimate_n) <= t.
  const long long n = 10000;
  const auto spec = CdfEstimatorSpec::m_out_of_n();
  const long long m = spec.m(n);
  for (EstimatorKind k : kAll)
    for (double ybar : {0.0, 0.05, 0.4, -0.31})
      for (double t : {-1.0, 0.0, 0.8}) {
        const double est = estimate_cdf(spec, k, ybar, n, t, kConsistent, 0.0);
        const double theta_n = estimate(k, ybar, kConsistent.plan(n));
        const CounterStream s(77, 0);
        const int N = 200000;
        int hits = 0;
        for (int i = 0; i < N; ++i) {
          const double ystar = ybar + s.normal(i) / std::sqrt(static_cast<double>(m));
          hits += std::sqrt(static_cast<double>(m)) * (estimate(k, ystar, kConsistent.plan(m)) - theta_n) <= t;
        }
        const double p = static_cast<double>(hits) / N;
        CHECK(std::abs(p - est) <= 4.0 * std::sqrt(0.25 / N) + 1e-12);
      }
}

TEST_CASE("worst-case harness") {
  const long long n = 10000;
  SECTION("oracle is exact at every grid point") {
    for (EstimatorKind k : kAll) {
      const auto r = estimator_worst_case(CdfEstimatorSpec::oracle(), k, n, 0.0, kConsistent, 2.0, 21, 1, 2000);
      for (double p : r.report.column("err_prob")) CHECK(p == 0.0);
      CHECK(r.sup == 0.0);
    }
  }
  SECTION("grid contains the two-point witnesses") {
    const auto g = worst_case_grid(n, 0.5, 2.0, 5);
    for (double f : kWitnessFractions)
      for (double sgn : {-1.0, 1.0}) {
        const double th = -(0.5 + sgn * f * 1.5) / 100.0;
        CHECK(std::find(g.begin(), g.end(), th) != g.end());
      }
    CHECK(std::find(g.begin(), g.end(), 0.0) != g.end());
    for (double th : g) CHECK(std::abs(th) < 0.02);
    CHECK_THROWS(worst_case_grid(n, 2.0, 2.0, 5));
  }
  SECTION("consistent estimators fail uniformly") {
    const auto pre = estimator_worst_case(CdfEstimatorSpec::pretest(), EstimatorKind::Hard, n, 0.0, kConsistent, 2.0, 21,
                                          2008, 10000);
    CHECK(pre.sup >= 0.5);
    CHECK(pre.sup >= pre.bound - 0.05);
    CHECK(pre.bound > 0.45);
    const auto mb = estimator_worst_case(CdfEstimatorSpec::m_out_of_n(), EstimatorKind::Hard, n, 0.0, kConsistent, 2.0, 21,
                                         2008, 10000);
    CHECK(mb.sup >= 0.5);
  }
  SECTION("m out of n against the full-n bootstrap") {
    const long long n5 = 100000;
    const auto mb = estimator_worst_case(CdfEstimatorSpec::m_out_of_n(), EstimatorKind::Hard, n5, 0.0, kConsistent, 2.0,
                                         21, 7, 4000);
    const auto fb = estimator_worst_case(CdfEstimatorSpec::full_bootstrap(), EstimatorKind::Hard, n5, 0.0, kConsistent,
                                         2.0, 21, 7, 4000);
    CHECK(mb.sup >= fb.sup);
  }
  SECTION("worst case does not decrease with n") {
    double prev = 0.0;
    for (long long m : {1000LL, 10000LL, 100000LL}) {
      const auto r = estimator_worst_case(CdfEstimatorSpec::pretest(), EstimatorKind::Soft, m, 0.0, kConsistent, 2.0, 21,
                                          3, 2000);
      CHECK(r.sup >= prev);
      prev = r.sup;
    }
  }
}

TEST_CASE("rescaled harness reduces to the unrescaled one") {
  const long long n = 10000;
  const double t = 0.4, c = 2.0;
  for (EstimatorKind k : kAll)
    for (const auto& spec : {CdfEstimatorSpec::pretest(), CdfEstimatorSpec::m_out_of_n(), CdfEstimatorSpec::oracle()}) {
      const auto r = rescaled_worst_case(spec, k, n, t, kConsistent, c, 11, 9, 500);
      const double E = std::sqrt(static_cast<double>(n)) * kConsistent.eta(n);
      const auto u = estimator_worst_case(spec, k, n, E * t, kConsistent, c * E, 11, 9, 500);
      CHECK(r.report.column("theta") == u.report.column("theta"));
      const auto pr = r.report.column("err_prob"), pu = u.report.column("err_prob");
      double diff = 0.0;
      for (std::size_t i = 0; i < pr.size(); ++i) diff = std::max(diff, std::abs(pr[i] - pu[i]));
      CHECK(diff <= 2.0 / 500);
      CHECK_THAT(r.epsilon_range, WithinAbs(u.epsilon_range, 1e-14));
      CHECK_THAT(r.bound, WithinAbs(u.bound, 1e-12));
    }
}
