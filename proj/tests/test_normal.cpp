#include "catch_amalgamated.hpp"

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "shrinkdist/ext_real.hpp"
#include "shrinkdist/normal.hpp"

using namespace shrinkdist;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("ExtReal ordering and arithmetic") {
  const ExtReal ninf = ExtReal::neg_inf();
  const ExtReal pinf = ExtReal::pos_inf();
  CHECK(ninf < ExtReal(-1e308));
  CHECK(ExtReal(1e308) < pinf);
  CHECK(ExtReal(std::numeric_limits<double>::infinity()) == pinf);
  CHECK((pinf + ExtReal(3.0)).is_pos_inf());
  CHECK((-pinf).is_neg_inf());
  CHECK_THROWS_AS(pinf + ninf, std::domain_error);
  CHECK_THROWS_AS(pinf - pinf, std::domain_error);
  CHECK_THROWS_AS(0.0 * pinf, std::domain_error);
  CHECK_THROWS(ExtReal(std::nan("")));
  CHECK_THROWS(pinf.value());
  CHECK(ExtReal(-2.0).abs() == ExtReal(2.0));
  CHECK(ninf.abs().is_pos_inf());
  CHECK(parse_ext_real("-inf").is_neg_inf());
  CHECK(parse_ext_real("+inf").is_pos_inf());
  CHECK(parse_ext_real("0.25") == ExtReal(0.25));
  CHECK(ExtReal(0.1).to_string() == "0.10000000000000001");
  CHECK(pinf.to_string() == "+inf");
}

TEST_CASE("phi against multiprecision") {
  CHECK_THAT(phi(0.0), WithinRel(0.3989422804014327, 1e-15));
  for (double x : {-7.5, -3.0, -1.3, 0.2, 1.0, 2.5, 9.0})
    CHECK_THAT(phi(x), WithinRel(oracle::phi_mp(x), 1e-14));
  CHECK(phi(1.3) == phi(-1.3));
  for (double x : {38.0, -38.0}) {
    CHECK(phi(x) >= 0.0);
    CHECK(phi(x) < 1e-300);
  }
  CHECK_THROWS(phi(std::numeric_limits<double>::infinity()));
}

TEST_CASE("Phi against multiprecision") {
  CHECK(Phi(0.0) == 0.5);
  CHECK_THAT(Phi(1.96), WithinAbs(0.9750021048517795, 1e-15));
  CHECK_THAT(oracle::Phi_mp(1.96), WithinAbs(0.9750021048517795, 1e-16));
  CHECK(Phi(ExtReal::neg_inf()) == 0.0);
  CHECK(Phi(ExtReal::pos_inf()) == 1.0);
  double prev = 0.0;
  for (double x = -39.0; x <= 39.0; x += 0.0137) {
    const double p = Phi(x);
    CHECK_THAT(p, WithinAbs(oracle::Phi_mp(x), 1e-15));
    CHECK(p >= prev);
    CHECK(std::abs(p + Phi(-x) - 1.0) <= 1e-15);
    prev = p;
  }
  for (double x = -6.0; x <= 6.0; x += 0.37) {
    const double h = 1e-5;
    CHECK_THAT((Phi(x + h) - Phi(x - h)) / (2 * h), WithinAbs(phi(x), 1e-6));
  }
}

TEST_CASE("Phi tail clamp and differences") {
  CHECK(Phi(-40.0) == 0.0);
  CHECK(Phi(-37.0) > 0.0);
  CHECK_THAT(Phi_diff(-1.96, 1.96), WithinAbs(2 * 0.9750021048517795 - 1, 1e-15));
  // Upper-tail path keeps relative accuracy far out.
  CHECK_THAT(Phi_diff(9.0, 10.0), WithinRel(oracle::Phi_mp(-9.0) - oracle::Phi_mp(-10.0), 1e-12));
  CHECK_THAT(Phi_upper(8.0), WithinRel(oracle::Phi_mp(-8.0), 1e-13));
}

TEST_CASE("Phi_inv") {
  CHECK_THAT(Phi_inv(0.5), WithinAbs(0.0, 1e-15));
  CHECK_THAT(Phi_inv(0.975), WithinAbs(1.959963984540054, 1e-9));
  CHECK_THAT(Phi_inv(Phi(0.7)), WithinAbs(0.7, 1e-12));
  for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.77, 0.999, 1 - 1e-9}) CHECK_THAT(Phi(Phi_inv(p)), WithinAbs(p, 1e-12));
  CHECK_THROWS(Phi_inv(0.0));
  CHECK_THROWS(Phi_inv(1.0));
  CHECK_THROWS(Phi_inv(-0.2));
}

TEST_CASE("normal_quantile_fast agrees with the bisection quantile") {
  for (double p : {1e-300, 1e-20, 1e-9, 0.001, 0.02425, 0.1, 0.5, 0.6, 0.9, 0.97575, 0.9999, 1 - 1e-12}) {
    const double q = normal_quantile_fast(p);
    CHECK_THAT(q, WithinAbs(Phi_inv(std::max(p, 1e-300)), 1e-9 * (1 + std::abs(q))));
  }
  CHECK(normal_quantile_fast(0.5) == 0.0);
  CHECK(normal_quantile_fast(0.3) == -normal_quantile_fast(0.7));
}

TEST_CASE("gaussian_tv") {
  CHECK(gaussian_tv(7, 0.3, 0.3) == 0.0);
  // Reference: half the L1 distance between N(0,1/4) and N(1,1/4) on a 10^6-point grid.
  double l1 = 0.0;
  const int N = 1000000;
  const double lo = -6.0, hi = 7.0, h = (hi - lo) / N;
  for (int i = 0; i < N; ++i) {
    const double x = lo + (i + 0.5) * h;
    l1 += std::abs(2.0 * oracle::std_normal_density(2.0 * x) - 2.0 * oracle::std_normal_density(2.0 * (x - 1.0))) * h;
  }
  CHECK_THAT(gaussian_tv(4, 0.0, 1.0), WithinAbs(0.5 * l1, 1e-8));
  CHECK_THAT(gaussian_tv(4, 0.0, 1.0), WithinAbs(0.6826894921370859, 1e-14));
  double prev = 0.0;
  for (double d = 0.0; d < 3.0; d += 0.01) {
    const double tv = gaussian_tv(9, 0.0, d);
    CHECK(tv >= prev);
    CHECK(tv <= 1.0);
    prev = tv;
  }
  CHECK_THAT(gaussian_tv(100, 0.1, 0.3), WithinAbs(gaussian_tv(400, 0.0, 0.1), 1e-15));
  CHECK_THROWS(gaussian_tv(0, 0.0, 1.0));
}
