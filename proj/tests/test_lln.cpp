#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "logsum/kahan.hpp"
#include "logsum/law.hpp"
#include "logsum/lln.hpp"
#include "logsum/special_functions.hpp"
#include "oracles.hpp"

using namespace logsum;

TEST_CASE("law normalization and tails") {
  for (const char* spec : {"zipf_plain", "zipf_log1", "zipf_log2"}) {
    IntLaw law = IntLaw::parse(spec);
    KahanSum mass;
    for (index_t n = 2; n <= (1 << 16); ++n) mass.add(law.pmf(n));
    // dense mass plus the analytic tail completes to 1
    CHECK(mass.value() + law.tail((double)(1 << 16)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(law.tail(100.0) > law.tail(1000.0));
    CHECK(law.tail(1.0) == 1.0);
  }
  IntLaw tp = IntLaw::two_point(0, 1, 0.25);
  CHECK(tp.pmf(0) == 0.75);
  CHECK(tp.pmf(1) == 0.25);
  CHECK(tp.mean() == doctest::Approx(0.25));
  CHECK(IntLaw::parse("fair_pm1").is_symmetric());
  CHECK(IntLaw::parse("zipf_log1,signed").is_symmetric());
  CHECK(!IntLaw::parse("zipf_log1").is_symmetric());
  CHECK_THROWS_AS(IntLaw::parse("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(IntLaw::parse("zipf_log1").mean(), std::domain_error);
}

TEST_CASE("law sampling matches the pmf on the dense range") {
  IntLaw law = IntLaw::parse("zipf_plain");
  SplitMix64 rng(99);
  int count2 = 0, neg = 0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    auto v = law.sample(rng);
    CHECK(v >= 2);
    if (v == 2) ++count2;
  }
  CHECK(std::abs((double)count2 / N - law.pmf(2)) < 0.01);

  IntLaw slaw = IntLaw::parse("zipf_plain,signed");
  SplitMix64 rng2(7);
  for (int i = 0; i < N; ++i) {
    if (slaw.sample(rng2) < 0) ++neg;
  }
  CHECK(std::abs((double)neg / N - 0.5) < 0.01);
}

TEST_CASE("moment check verdicts match the integral-test oracles") {
  index_t horizon = 1 << 24;
  MomentCheck log1 = moment_check(IntLaw::parse("zipf_log1"), horizon);
  CHECK(log1.llogl.verdict == "convergent");
  CHECK(log1.mean.verdict == "divergent");
  CHECK(log1.law_has_llogl);
  CHECK(!log1.law_has_mean);

  MomentCheck plain = moment_check(IntLaw::parse("zipf_plain"), horizon);
  CHECK(plain.llogl.verdict == "divergent");
  CHECK(plain.mean.verdict == "divergent");

  MomentCheck log2 = moment_check(IntLaw::parse("zipf_log2"), horizon);
  CHECK(log2.llogl.verdict == "convergent");
  CHECK(log2.mean.verdict == "convergent");

  MomentCheck tp = moment_check(IntLaw::two_point(0, 5, 0.5), 1 << 12);
  CHECK(tp.llogl.verdict == "convergent");
  CHECK(tp.mean.verdict == "convergent");
}

TEST_CASE("truncated means") {
  CHECK(truncated_mean(IntLaw::parse("fair_pm1"), 10) == 0.0);
  CHECK(truncated_mean(IntLaw::parse("zipf_log1,signed"), 1000) == 0.0);
  // phi(1) = 2 log 2 > 1, so the 0/1 coin is fully inside the cutoff at k = 0
  IntLaw coin = IntLaw::two_point(0, 1, 0.5);
  CHECK(truncated_mean(coin, 0) == doctest::Approx(0.5));
  CHECK(truncated_mean(coin, 100) == doctest::Approx(0.5));
  // zipf support starts at 2 > phi(1), so m_0 = 0
  IntLaw z = IntLaw::parse("zipf_log1");
  CHECK(truncated_mean(z, 0) == 0.0);
  // direct summation oracle at k = 100
  index_t cutoff = (index_t)std::floor(phi(101.0));
  double ref = 0.0;
  for (index_t n = 2; n <= cutoff; ++n) ref += (double)n * z.pmf(n);
  CHECK(truncated_mean(z, 100) == doctest::Approx(ref).epsilon(1e-12));

  std::vector<double> batch = truncated_means(z, 500);
  CHECK(batch[0] == 0.0);
  CHECK(batch[100] == doctest::Approx(truncated_mean(z, 100)).epsilon(1e-12));
  CHECK(batch[500] == doctest::Approx(truncated_mean(z, 500)).epsilon(1e-12));
  for (size_t k = 1; k < batch.size(); ++k) CHECK(batch[k] >= batch[k - 1]);  // positive law
}

TEST_CASE("truncated means stabilize at the mean for light tails") {
  IntLaw pois = IntLaw::poisson1();
  std::vector<double> m = truncated_means(pois, 300);
  for (size_t k = 1; k < m.size(); ++k) CHECK(m[k] >= m[k - 1] - 1e-15);
  CHECK(m.back() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("simulation statistics vanish for a degenerate law") {
  IntLaw zero_law = IntLaw::two_point(0, 0, 1.0);
  for (const char* st : {"ii", "iii", "iv", "vi", "vii", "viii", "ix"}) {
    SimReport rep = simulate_statement(st, zero_law, {100, 1000}, 3, 5);
    for (const auto& traj : rep.trajectories) {
      for (double v : traj) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("simulation is reproducible and thread independent") {
  IntLaw law = IntLaw::parse("zipf_log1,signed");
  SimReport a = simulate_statement("vi", law, {500, 2000}, 6, 77, 2.0, 2.0, 1.0, 1);
  SimReport b = simulate_statement("vi", law, {500, 2000}, 6, 77, 2.0, 2.0, 1.0, 3);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_csv() == b.to_csv());
  SimReport c = simulate_statement("vi", law, {500, 2000}, 6, 78);
  CHECK(a.to_json() != c.to_json());
}

TEST_CASE("fair coin statement vi sits inside the CLT envelope") {
  IntLaw law = IntLaw::parse("fair_pm1");
  SimReport rep = simulate_statement("vi", law, {10000}, 30, 4242);
  // Var(sum) = n, so |stat| ~ sqrt(n)/phi(n); 3-sigma envelope
  double envelope = 3.0 * std::sqrt(10000.0) / phi(10000.0);
  int inside = 0;
  for (const auto& traj : rep.trajectories) {
    if (std::abs(traj[0]) <= envelope) ++inside;
  }
  CHECK(inside >= 27);  // P(outside) ~ 0.0027 per replica
  CHECK(rep.median_abs[0] <= envelope);
}

TEST_CASE("statement trajectories shrink for a law with the L/logL moment") {
  IntLaw law = IntLaw::parse("zipf_log1,signed");
  for (const char* st : {"ii", "iii", "vi", "vii"}) {
    SimReport rep = simulate_statement(st, law, {1000, 100000}, 20, 11);
    CHECK(rep.median_abs.back() < rep.median_abs.front());
  }
}

TEST_CASE("statement vii window is sane") {
  // lower endpoint phi_inv(phi(n)/beta) grows but stays below n
  double prev = 0.0;
  for (index_t n = 3; n <= 10000; n *= 3) {
    double w = phi_inv(phi((double)n) / 1.1);
    CHECK(w < (double)n);
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("statements viii and ix produce probabilities and partial series") {
  IntLaw law = IntLaw::parse("fair_pm1");
  SimReport r8 = simulate_statement("viii", law, {100, 1000, 10000}, 20, 9, 2.0, 2.0, 0.5);
  SimReport r9 = simulate_statement("ix", law, {100, 1000, 10000}, 20, 9, 2.0, 2.0, 0.5);
  REQUIRE(r8.prob_estimate.size() == 3);
  for (size_t j = 0; j < 3; ++j) {
    CHECK(r8.prob_estimate[j] >= 0.0);
    CHECK(r8.prob_estimate[j] <= 1.0);
    // the running max dominates the endpoint statistic
    CHECK(r9.prob_estimate[j] >= r8.prob_estimate[j]);
    if (j > 0) CHECK(r8.series_partial[j] >= r8.series_partial[j - 1]);
  }
  CHECK_THROWS_AS(simulate_statement("viii", law, {100}, 5, 1, 2.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(simulate_statement("x", law, {100}, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(simulate_statement("vi", law, {100, 50}, 5, 1), std::domain_error);
}

TEST_CASE("exceedance series verdicts") {
  // bounded law: past epsilon*n*log n >= max|X| every term vanishes
  SeriesCheck coin = exceedance_series(IntLaw::parse("fair_pm1"), 1.0, 1 << 16);
  CHECK(coin.verdict == "convergent");
  CHECK(coin.partial.back() == doctest::Approx(coin.partial.front()));

  SeriesCheck plain = exceedance_series(IntLaw::parse("zipf_plain"), 1.0, 1 << 22);
  CHECK(plain.verdict == "divergent");

  SeriesCheck log1 = exceedance_series(IntLaw::parse("zipf_log1"), 1.0, 1 << 22);
  CHECK(log1.verdict == "convergent");

  CHECK_THROWS_AS(exceedance_series(IntLaw::parse("zipf_plain"), 0.0, 1000), std::domain_error);
}

TEST_CASE("report serialization carries the config") {
  IntLaw law = IntLaw::parse("fair_pm1");
  SimReport rep = simulate_statement("vi", law, {100}, 2, 3);
  std::string js = rep.to_json();
  CHECK(js.find("\"statement\": \"vi\"") != std::string::npos);
  CHECK(js.find("\"law\"") != std::string::npos);
  std::string csv = rep.to_csv();
  CHECK(csv.rfind("statement,horizon,stat,value\n", 0) == 0);
  CHECK(csv.find("median_abs") != std::string::npos);
}
