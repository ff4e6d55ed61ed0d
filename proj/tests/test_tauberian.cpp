#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "logsum/sequence.hpp"
#include "logsum/tauberian.hpp"
#include "oracles.hpp"

using namespace logsum;

namespace {
const std::vector<double> kLambdas{2.0, 1.5, 1.2, 1.1};
const std::vector<index_t> kNGrid{100, 200, 400, 800, 1600, 3200, 6400, 12800};
}  // namespace

TEST_CASE("one-sided condition on the constant sequence") {
  ConditionProfile p = one_sided_condition(Sequence::constant(1.0), kLambdas, kNGrid);
  CHECK(p.verdict == "satisfied");
  for (const auto& row : p.values) {
    for (double v : row) CHECK(v >= 0.0);  // all summands positive
  }
}

TEST_CASE("one-sided condition on the zero sequence") {
  ConditionProfile p = one_sided_condition(Sequence::zero(), kLambdas, kNGrid);
  CHECK(p.verdict == "satisfied");
  for (const auto& row : p.values) {
    for (double v : row) CHECK(v == 0.0);
  }
}

TEST_CASE("one-sided condition is violated by s_i = -(i+1)") {
  Sequence s = Sequence::from_function([](index_t i) { return -(double)(i + 1); });
  ConditionProfile p = one_sided_condition(s, kLambdas, kNGrid);
  CHECK(p.verdict == "violated");
  // direct summation oracle: inner value is -(m - n + 1)/log n minimized at
  // m = floor(lambda n)
  index_t n = kNGrid.back();
  double lambda = kLambdas.front();
  index_t m = (index_t)std::floor(lambda * (double)n);
  double expect = -(double)(m - n + 1) / std::log((double)n);
  CHECK(p.values.front().back() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("one-sided condition rejects bad grids") {
  Sequence one = Sequence::constant(1.0);
  CHECK_THROWS_AS(one_sided_condition(one, {1.1, 1.5}, kNGrid), std::domain_error);
  CHECK_THROWS_AS(one_sided_condition(one, kLambdas, {100, 100}), std::domain_error);
  CHECK_THROWS_AS(one_sided_condition(one, {}, kNGrid), std::domain_error);
}

TEST_CASE("theorem 4 condition (ii) on ell-convergent families") {
  std::vector<double> xg{100, 400, 1600, 6400, 25600, 102400};
  for (const char* spec : {"const:1", "const:-2", "alt01", "altsign", "slowdrift:1,2"}) {
    ConditionProfile p = thm4_condition_ii(Sequence::parse(spec), kLambdas, xg);
    CHECK(p.verdict == "satisfied");
  }
}

TEST_CASE("theorem 4 condition (ii) values") {
  std::vector<double> xg{100, 1000, 10000};
  ConditionProfile z = thm4_condition_ii(Sequence::zero(), kLambdas, xg);
  for (const auto& row : z.values) {
    for (double v : row) CHECK(v == 0.0);
  }
  // constant 1: sup_theta [U(x) - U(x^{1/theta})]/log x <= (1 - 1/alpha) + o(1)
  ConditionProfile c = thm4_condition_ii(Sequence::constant(1.0), kLambdas, xg);
  for (size_t a = 0; a < kLambdas.size(); ++a) {
    CHECK(c.values[a].back() <= (1.0 - 1.0 / kLambdas[a]) + 0.05);
    CHECK(c.values[a].back() >= 0.0);
  }
  // unbounded oscillation s_i = (i+1)(-1)^i: the U jumps are exactly +-1, so
  // the normalized differences stay below 2/log x
  Sequence osc = Sequence::from_function([](index_t i) {
    return (double)(i + 1) * (i % 2 == 0 ? 1.0 : -1.0);
  });
  ConditionProfile o = thm4_condition_ii(osc, {1.5}, {10000.0});
  CHECK(std::abs(o.values[0][0]) <= 2.0 / std::log(10000.0) + 1e-12);
}

TEST_CASE("theorem 6 gap condition verdicts") {
  std::vector<double> deltas{1.0, 0.5, 0.2};
  Sequence inc = Sequence::from_function([](index_t i) { return std::log((double)i + 1.0); });
  CHECK(thm6_gap_condition(inc, 0.0, deltas, kNGrid).verdict == "satisfied");
  CHECK(thm6_gap_condition(Sequence::constant(3.0), 0.0, deltas, kNGrid).verdict == "satisfied");

  ConditionProfile p = thm6_gap_condition(Sequence::alternating_sign(), 0.0, {1.0}, kNGrid);
  CHECK(p.verdict == "violated");
  // two-point oscillation: the drop from +1 to -1 gives min exactly -2
  CHECK(p.values[0].back() == doctest::Approx(-2.0));
}

TEST_CASE("theorem 6 degenerate windows are flagged as zero") {
  // delta sqrt(n) <= 1 leaves only m = n in the window
  ConditionProfile p = thm6_gap_condition(Sequence::alternating_sign(), 0.0, {0.01}, {100, 200});
  CHECK(p.flags[0] == 2);
  CHECK(p.values[0][0] == 0.0);
  CHECK(p.verdict == "satisfied");
  CHECK_THROWS_AS(thm6_gap_condition(Sequence::zero(), -1.0, {1.0}, {100}), std::domain_error);
}

TEST_CASE("moricz functionals vanish on constants and sign correctly") {
  Sequence c = Sequence::constant(4.0);
  CHECK(moricz_upper_value(c, 1.3, 50.0) == 0.0);
  CHECK(moricz_lower_value(c, 0.7, 50.0) == 0.0);
  auto [up, low] = moricz_conditions(c, {1.5, 1.2}, {0.6, 0.8}, {100, 1000});
  CHECK(up.verdict == "satisfied");
  CHECK(low.verdict == "satisfied");

  // nondecreasing sequence: s(u) >= s(x) for u >= x, integrand sign is fixed
  Sequence inc = Sequence::from_function([](index_t i) { return std::sqrt((double)i); });
  for (double x : {100.0, 500.0, 2000.0}) {
    CHECK(moricz_upper_value(inc, 1.2, x) >= 0.0);
    CHECK(moricz_lower_value(inc, 0.8, x) >= 0.0);
  }
}

TEST_CASE("moricz exact segments match aligned midpoint quadrature") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Sequence s = Sequence::from_values(oracles::random_values(seed, 10000));
    double exact_up = moricz_upper_value(s, 1.2, 100.0);
    double quad_up = oracles::moricz_upper_quadrature(s, 1.2, 100.0, 7000);
    CHECK(std::abs(exact_up - quad_up) <= 1e-6);
    double exact_low = moricz_lower_value(s, 0.85, 500.0);
    double quad_low = oracles::moricz_lower_quadrature(s, 0.85, 500.0, 7000);
    CHECK(std::abs(exact_low - quad_low) <= 1e-6);
  }
}

TEST_CASE("moricz horizon guard") {
  Sequence c = Sequence::constant(1.0);
  CHECK_THROWS_AS(moricz_upper_value(c, 3.0, 1e8), std::domain_error);
  CHECK_THROWS_AS(moricz_upper_value(c, 0.9, 100.0), std::domain_error);
  CHECK_THROWS_AS(moricz_lower_value(c, 1.2, 100.0), std::domain_error);
}
