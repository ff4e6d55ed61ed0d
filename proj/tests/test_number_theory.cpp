#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "logsum/number_theory.hpp"
#include "logsum/special_functions.hpp"

using namespace logsum;

namespace {

// independent oracle: plain bool-array sieve, no segmentation, no tricks
std::vector<bool> bool_sieve(index_t limit) {
  std::vector<bool> comp((size_t)limit + 1, false);
  comp[0] = comp[1] = true;
  for (index_t p = 2; p * p <= limit; ++p) {
    if (comp[(size_t)p]) continue;
    for (index_t q = p * p; q <= limit; q += p) comp[(size_t)q] = true;
  }
  return comp;
}

bool trial_prime(index_t n) {
  if (n < 2) return false;
  for (index_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("small sieve matches trial division") {
  SieveTable sieve(10);
  CHECK(sieve.primes() == std::vector<std::uint32_t>{2, 3, 5, 7});
  SieveTable s100(100);
  index_t count = 0;
  for (index_t n = 0; n <= 100; ++n) {
    CHECK(s100.is_prime(n) == trial_prime(n));
    if (trial_prime(n)) ++count;
  }
  CHECK(count == 25);
  CHECK(s100.prime_count(100) == 25);
  CHECK(s100.nth_prime(25) == 97);
  CHECK(s100.nth_prime(1) == 2);
  CHECK_THROWS_AS(s100.nth_prime(26), std::domain_error);
  CHECK_THROWS_AS(SieveTable(1), std::domain_error);
  CHECK_THROWS_AS(SieveTable(200000000), std::length_error);
}

TEST_CASE("segmented sieve agrees with a plain sieve at one million") {
  const index_t L = 1000000;
  SieveTable sieve(L);
  auto comp = bool_sieve(L);
  index_t pi = 0;
  for (index_t n = 2; n <= L; ++n) {
    if (!comp[(size_t)n]) ++pi;
  }
  CHECK(pi == 78498);
  CHECK(sieve.prime_count(L) == 78498);
  CHECK(sieve.prime_count(1000) == 168);
  CHECK(sieve.prime_count(10000) == 1229);
  CHECK(sieve.primes().size() == 78498);
  // spot-check primality against the oracle on a stride
  for (index_t n = 2; n <= L; n += 997) {
    CHECK(sieve.is_prime(n) == !comp[(size_t)n]);
  }
}

TEST_CASE("von Mangoldt function") {
  SieveTable sieve(10000);
  CHECK(sieve.mangoldt(1) == 0.0);
  CHECK(sieve.mangoldt(2) == doctest::Approx(std::log(2.0)));
  CHECK(sieve.mangoldt(4) == doctest::Approx(std::log(2.0)));
  CHECK(sieve.mangoldt(6) == 0.0);
  CHECK(sieve.mangoldt(9) == doctest::Approx(std::log(3.0)));
  CHECK(sieve.mangoldt(12) == 0.0);
  // sum_{d|n} Lambda(d) = log n
  for (index_t n = 1; n <= 10000; ++n) {
    double acc = 0.0;
    for (index_t d = 1; d * d <= n; ++d) {
      if (n % d) continue;
      acc += sieve.mangoldt(d);
      if (d != n / d) acc += sieve.mangoldt(n / d);
    }
    CHECK(std::abs(acc - std::log((double)n)) <= 1e-12 * std::max(1.0, std::log((double)n)) + 1e-13);
  }
}

TEST_CASE("weighted Mangoldt and Mertens sums") {
  SieveTable sieve(100000);
  CHECK(mangoldt_weighted_sum(sieve, 1) == 0.0);
  // x = 4: log2/2 + log3/3 + log2/4
  double x4 = std::log(2.0) / 2.0 + std::log(3.0) / 3.0 + std::log(2.0) / 4.0;
  CHECK(mangoldt_weighted_sum(sieve, 4) == doctest::Approx(x4).epsilon(1e-14));
  CHECK(mertens_sum(sieve, 2) == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-14));
  // direct double-loop oracle at x = 100
  double ref = 0.0;
  for (index_t n = 2; n <= 100; ++n) ref += sieve.mangoldt(n) / (double)n;
  CHECK(mangoldt_weighted_sum(sieve, 100) == doctest::Approx(ref).epsilon(1e-13));
  double refm = 0.0;
  for (index_t p = 2; p <= 100; ++p) {
    if (sieve.is_prime(p)) refm += std::log((double)p) / (double)p;
  }
  CHECK(mertens_sum(sieve, 100) == doctest::Approx(refm).epsilon(1e-13));
  // the prime-power correction sum_{p,m>=2} log p/p^m is bounded (~0.7555) and
  // positive, so the gap stays inside [0, 1.1] well before the limit
  for (index_t x = 1000; x <= 100000; x *= 10) {
    double gap = mangoldt_weighted_sum(sieve, x) - mertens_sum(sieve, x);
    CHECK(gap >= 0.0);
    CHECK(gap <= 1.1);
  }
}

TEST_CASE("pnt hierarchy report tightens down the chain") {
  SieveTable sieve(1000000);
  auto rows = pnt_hierarchy_report(sieve, {10000, 100000, 1000000});
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.pi == sieve.prime_count(r.x));
    CHECK(r.li == doctest::Approx(log_integral((double)r.x)).epsilon(1e-10));
    CHECK(r.pi_over_li > 0.9);
    CHECK(r.pi_over_li < 1.1);
    // the weaker normalizations sit further from 1
    CHECK(std::abs(r.pi_over_li - 1.0) < std::abs(r.pi_logx_over_x - 1.0));
  }
  // drifts are bounded and the mangoldt one is tighter than the mertens one
  for (const auto& r : rows) {
    CHECK(std::abs(r.mangoldt_drift) < 2.0);
    CHECK(std::abs(r.mertens_drift) < 2.5);
  }
  // p_n / (n log n) -> 1 very slowly (still ~1.13 at n = pi(1e6))
  CHECK(rows[2].pn_over_nlogn > 0.9);
  CHECK(rows[2].pn_over_nlogn < 1.2);
  CHECK(rows[2].pn_over_nlogn < rows[0].pn_over_nlogn);
  std::string csv = pnt_rows_to_csv(rows);
  CHECK(csv.find("pi_over_li") != std::string::npos);
  CHECK_THROWS_AS(pnt_hierarchy_report(sieve, {2}), std::domain_error);
}

TEST_CASE("integer set mini-language") {
  SieveTable sieve(100000);
  IntegerSet even = IntegerSet::parse("even");
  CHECK(even.contains(4, sieve));
  CHECK(!even.contains(7, sieve));
  IntegerSet ap = IntegerSet::parse("ap:1,4");
  CHECK(ap.contains(1, sieve));
  CHECK(ap.contains(5, sieve));
  CHECK(!ap.contains(4, sieve));
  IntegerSet pap = IntegerSet::parse("pap:1,4");
  CHECK(pap.contains(5, sieve));
  CHECK(pap.contains(13, sieve));
  CHECK(pap.contains(17, sieve));
  CHECK(!pap.contains(7, sieve));   // 7 = 3 mod 4
  CHECK(!pap.contains(9, sieve));   // 1 mod 4 but not prime
  CHECK(pap.prime_subset());
  CHECK(!ap.prime_subset());

  IntegerSet ld = IntegerSet::parse("ld:1");
  CHECK(ld.contains(1, sieve));
  CHECK(ld.contains(19, sieve));
  CHECK(ld.contains(1999, sieve));
  CHECK(!ld.contains(2, sieve));
  CHECK(!ld.contains(91, sieve));
  index_t c1 = 0, c2 = 0;
  for (index_t n = 1; n <= 20000; ++n) {
    if (ld.contains(n, sieve)) ++c1;
    if (n <= 10000) c2 += ld.contains(n, sieve) ? 1 : 0;
  }
  CHECK(c1 == 11111);  // 1..1, 10..19, ..., 10000..19999
  CHECK(c2 == 1112);   // the same set cut at 1e4 has density 0.1112

  const char* path = "test_set_tmp.txt";
  {
    std::ofstream out(path);
    out << "3\n17\n42\n";
  }
  IntegerSet fl = IntegerSet::parse(std::string("file:") + path);
  CHECK(fl.contains(17, sieve));
  CHECK(!fl.contains(5, sieve));
  std::remove(path);

  CHECK_THROWS(IntegerSet::parse("ld:0"));
  CHECK_THROWS_AS(IntegerSet::parse("ap:1"), std::invalid_argument);
  CHECK_THROWS_AS(IntegerSet::parse("weird"), std::invalid_argument);
}

TEST_CASE("density chain for the even numbers") {
  SieveTable sieve(1000);
  IntegerSet even = IntegerSet::parse("even");
  DensityReport rep =
      density_report(even, {100, 1000, 10000, 100000, 1000000}, {1.1, 1.05}, sieve);
  for (const auto& r : rep.rows) {
    CHECK(r.arithmetic == 0.5);  // checkpoints are even, count is exactly n/2
    CHECK(r.chain_ok);
    CHECK(r.arith_lower <= r.log_hnorm);
    CHECK(r.log_hnorm <= r.arith_upper);
    // the H-normalized log density approaches 0.5 from below at rate ~1/log n
    CHECK(std::abs(r.log_hnorm - 0.5) < 0.4 / std::log((double)r.n));
  }
  CHECK(std::abs(rep.windowed_log_estimate - 0.5) < 1e-3);
  // only meaningful for sigma close to 1: at sigma = 1.1 the Dirichlet density
  // is still ~0.006 away from the limit
  for (const auto& a : rep.analytic) {
    CHECK(std::abs(a.tail_completed - 0.5) < 0.01);
  }
  CHECK(rep.to_csv().find("chain_ok") != std::string::npos);
}

TEST_CASE("leading digit 1: log density exists, arithmetic density oscillates") {
  SieveTable sieve(1000);
  IntegerSet ld = IntegerSet::parse("ld:1");
  std::vector<index_t> cps;
  for (index_t n = 1000; n <= 10000000; n *= 10) cps.push_back(n);
  DensityReport rep = density_report(ld, cps, {1.5, 1.2}, sieve);
  const double benford = 0.30102999566398120;  // log10(2)
  CHECK(std::abs(rep.windowed_log_estimate - benford) < 0.01);
  const DensityRow& last = rep.rows.back();
  CHECK(last.arith_upper - last.arith_lower >= 0.1);  // no arithmetic density
  CHECK(last.chain_ok);
}

TEST_CASE("primes 1 mod 4 approach half of all primes in the tail") {
  SieveTable sieve(1000000);
  IntegerSet pap = IntegerSet::parse("pap:1,4");
  DensityReport rep = density_report(pap, {1000000}, {1.1, 1.05}, sieve);
  CHECK(rep.is_prime_subset);
  for (const auto& a : rep.analytic) {
    // the full-range ratio is dragged down by p = 2, 3; the p > 1e3 tail
    // ratio reflects the Dirichlet split
    CHECK(a.prime_ratio < a.prime_ratio_tail);
    CHECK(std::abs(a.prime_ratio_tail - 0.5) < 0.1);
  }
}

TEST_CASE("density report input validation") {
  SieveTable sieve(1000);
  IntegerSet even = IntegerSet::parse("even");
  CHECK_THROWS_AS(density_report(even, {100, 50}, {1.5}, sieve), std::domain_error);
  CHECK_THROWS_AS(density_report(even, {100}, {1.0}, sieve), std::domain_error);
  IntegerSet pap = IntegerSet::parse("pap:1,4");
  // prime predicate past the sieve limit
  CHECK_THROWS_AS(density_report(pap, {100000}, {1.5}, sieve), std::domain_error);
}
