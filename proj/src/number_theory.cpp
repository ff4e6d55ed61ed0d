#include "logsum/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "logsum/kahan.hpp"
#include "logsum/special_functions.hpp"

namespace logsum {

namespace {

constexpr index_t kSieveCap = 100000000;  // 1e8
constexpr index_t kSegment = 1 << 20;

int leading_digit_of(index_t n) {
  while (n >= 10) n /= 10;
  return (int)n;
}

}  // namespace

SieveTable::SieveTable(index_t limit) : limit_(limit) {
  if (limit < 2) throw std::domain_error("SieveTable: need limit >= 2");
  if (limit > kSieveCap) {
    throw std::length_error("SieveTable: limit above the 1e8 memory budget");
  }
  // base primes up to sqrt(limit)
  index_t root = (index_t)std::sqrt((double)limit) + 1;
  while (root * root > limit + 1) --root;
  std::vector<bool> base((size_t)root + 2, true);
  std::vector<std::uint32_t> base_primes;
  for (index_t p = 2; p <= root + 1; ++p) {
    if (!base[(size_t)p]) continue;
    base_primes.push_back((std::uint32_t)p);
    for (index_t q = p * p; q <= root + 1; q += p) base[(size_t)q] = false;
  }
  std::vector<bool> seg;
  for (index_t lo = 2; lo <= limit; lo += kSegment) {
    index_t hi = std::min(limit, lo + kSegment - 1);
    seg.assign((size_t)(hi - lo + 1), true);
    for (std::uint32_t p : base_primes) {
      index_t pp = (index_t)p;
      if (pp * pp > hi) break;
      index_t start = std::max(pp * pp, ((lo + pp - 1) / pp) * pp);
      for (index_t q = start; q <= hi; q += pp) seg[(size_t)(q - lo)] = false;
    }
    for (index_t n = lo; n <= hi; ++n) {
      if (seg[(size_t)(n - lo)]) primes_.push_back((std::uint32_t)n);
    }
  }
}

bool SieveTable::is_prime(index_t n) const {
  if (n < 2 || n > limit_) return false;
  return std::binary_search(primes_.begin(), primes_.end(), (std::uint32_t)n);
}

index_t SieveTable::prime_count(index_t x) const {
  if (x > limit_) throw std::domain_error("SieveTable: x beyond sieve limit");
  if (x < 2) return 0;
  auto it = std::upper_bound(primes_.begin(), primes_.end(), (std::uint32_t)x);
  return (index_t)(it - primes_.begin());
}

index_t SieveTable::nth_prime(index_t n) const {
  if (n < 1 || (size_t)n > primes_.size()) {
    throw std::domain_error("SieveTable: nth_prime index out of range");
  }
  return (index_t)primes_[(size_t)n - 1];
}

double SieveTable::mangoldt(index_t n) const {
  if (n < 2) return 0.0;
  index_t p = 0;
  for (std::uint32_t q : primes_) {
    index_t qq = (index_t)q;
    if (qq * qq > n) break;
    if (n % qq == 0) {
      p = qq;
      break;
    }
  }
  if (p == 0) {
    // no factor up to sqrt(n): n itself is prime
    if (n > limit_) throw std::domain_error("SieveTable: mangoldt beyond sieve limit");
    return std::log((double)n);
  }
  index_t r = n;
  while (r % p == 0) r /= p;
  return r == 1 ? std::log((double)p) : 0.0;
}

double mangoldt_weighted_sum(const SieveTable& sieve, index_t x) {
  if (x > sieve.limit()) throw std::domain_error("mangoldt_weighted_sum: x beyond sieve");
  KahanSum acc;
  for (std::uint32_t p : sieve.primes()) {
    index_t pp = (index_t)p;
    if (pp > x) break;
    double lp = std::log((double)pp);
    for (index_t q = pp; q <= x; ) {
      acc.add(lp / (double)q);
      if (q > x / pp) break;  // next power would overflow past x
      q *= pp;
    }
  }
  return acc.value();
}

double mertens_sum(const SieveTable& sieve, index_t x) {
  if (x > sieve.limit()) throw std::domain_error("mertens_sum: x beyond sieve");
  KahanSum acc;
  for (std::uint32_t p : sieve.primes()) {
    if ((index_t)p > x) break;
    acc.add(std::log((double)p) / (double)p);
  }
  return acc.value();
}

std::vector<PntRow> pnt_hierarchy_report(const SieveTable& sieve,
                                         const std::vector<index_t>& x_checkpoints) {
  std::vector<PntRow> rows;
  for (index_t x : x_checkpoints) {
    if (x < 3) throw std::domain_error("pnt_hierarchy_report: need x >= 3");
    PntRow r;
    r.x = x;
    double lx = std::log((double)x);
    r.mangoldt_drift = mangoldt_weighted_sum(sieve, x) - lx;
    r.mertens_drift = mertens_sum(sieve, x) - lx;
    r.pi = sieve.prime_count(x);
    r.li = log_integral((double)x);
    r.pi_over_li = (double)r.pi / r.li;
    r.pi_logx_over_x = (double)r.pi * lx / (double)x;
    index_t pn = sieve.nth_prime(r.pi);
    r.pn_over_nlogn = (double)pn / ((double)r.pi * std::log((double)r.pi));
    rows.push_back(r);
  }
  return rows;
}

std::string pnt_rows_to_csv(const std::vector<PntRow>& rows) {
  std::string out =
      "x,mangoldt_drift,mertens_drift,pi,li,pi_over_li,pi_logx_over_x,pn_over_nlogn\n";
  char buf[256];
  for (const PntRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g,%lld,%.17g,%.17g,%.17g,%.17g\n",
                  (long long)r.x, r.mangoldt_drift, r.mertens_drift, (long long)r.pi, r.li,
                  r.pi_over_li, r.pi_logx_over_x, r.pn_over_nlogn);
    out += buf;
  }
  return out;
}

IntegerSet IntegerSet::residue_class(index_t a, index_t b) {
  if (b < 1) throw std::domain_error("residue_class: need modulus >= 1");
  IntegerSet s;
  s.kind_ = Kind::residue;
  s.a_ = ((a % b) + b) % b;
  s.b_ = b;
  s.name_ = "ap:" + std::to_string(s.a_) + "," + std::to_string(b);
  return s;
}

IntegerSet IntegerSet::primes() {
  IntegerSet s;
  s.kind_ = Kind::primes;
  s.name_ = "primes";
  return s;
}

IntegerSet IntegerSet::primes_in_ap(index_t a, index_t b) {
  if (b < 1) throw std::domain_error("primes_in_ap: need modulus >= 1");
  IntegerSet s;
  s.kind_ = Kind::primes_in_ap;
  s.a_ = ((a % b) + b) % b;
  s.b_ = b;
  s.name_ = "pap:" + std::to_string(s.a_) + "," + std::to_string(b);
  return s;
}

IntegerSet IntegerSet::leading_digit(int d) {
  if (d < 1 || d > 9) throw std::domain_error("leading_digit: need d in 1..9");
  IntegerSet s;
  s.kind_ = Kind::leading_digit;
  s.digit_ = d;
  s.name_ = "ld:" + std::to_string(d);
  return s;
}

IntegerSet IntegerSet::explicit_list(std::vector<index_t> values) {
  IntegerSet s;
  s.kind_ = Kind::explicit_list;
  s.list_.insert(values.begin(), values.end());
  s.name_ = "explicit(" + std::to_string(s.list_.size()) + ")";
  return s;
}

IntegerSet IntegerSet::parse(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "even") return residue_class(0, 2);
  if (head == "primes") return primes();
  if (head == "ap" || head == "pap") {
    long long a, b;
    if (std::sscanf(args.c_str(), "%lld,%lld", &a, &b) != 2) {
      throw std::invalid_argument(head + " requires a,b");
    }
    return head == "ap" ? residue_class(a, b) : primes_in_ap(a, b);
  }
  if (head == "ld") {
    if (args.size() != 1 || args[0] < '1' || args[0] > '9') {
      throw std::invalid_argument("ld requires a digit 1..9");
    }
    return leading_digit(args[0] - '0');
  }
  if (head == "file") {
    std::ifstream in(args);
    if (!in) throw std::runtime_error("IntegerSet: cannot open " + args);
    std::vector<index_t> vals;
    long long v;
    while (in >> v) vals.push_back((index_t)v);
    auto s = explicit_list(std::move(vals));
    s.name_ = "file:" + args;
    return s;
  }
  throw std::invalid_argument("unknown set spec: " + spec);
}

bool IntegerSet::contains(index_t n, const SieveTable& sieve) const {
  if (n < 1) return false;
  switch (kind_) {
    case Kind::residue: return n % b_ == a_;
    case Kind::primes: return sieve.is_prime(n);
    case Kind::primes_in_ap: return n % b_ == a_ && sieve.is_prime(n);
    case Kind::leading_digit: return leading_digit_of(n) == digit_;
    case Kind::explicit_list: return list_.count(n) > 0;
  }
  return false;
}

DensityReport density_report(const IntegerSet& set, const std::vector<index_t>& checkpoints,
                             const std::vector<double>& sigma_grid, const SieveTable& sieve) {
  if (checkpoints.empty()) throw std::domain_error("density_report: empty checkpoints");
  for (size_t j = 0; j < checkpoints.size(); ++j) {
    if (checkpoints[j] < 2 || (j > 0 && checkpoints[j] <= checkpoints[j - 1])) {
      throw std::domain_error("density_report: checkpoints must be >= 2 and increasing");
    }
  }
  for (double s : sigma_grid) {
    if (!(s > 1.0)) throw std::domain_error("density_report: sigma must be > 1");
  }
  index_t cap = checkpoints.back();
  if (set.needs_sieve() && cap > sieve.limit()) {
    throw std::domain_error("density_report: checkpoint beyond sieve limit");
  }

  DensityReport rep;
  rep.set_name = set.name();
  rep.is_prime_subset = set.prime_subset();

  // one pass: counts, the 1/k logarithmic sum, H_n, and the running min/max
  // of count(k)/k — the finite liminf/limsup proxies under which the chain
  // inequality d_lower <= delta <= d_upper holds exactly (with the H_n
  // normalizer, the logarithmic estimate is a weighted mean of the
  // arithmetic ratios)
  KahanSum logsum, harmonic;
  index_t count = 0;
  double amin = std::numeric_limits<double>::infinity();
  double amax = 0.0;
  size_t next = 0;
  std::vector<double> l_at;  // logsum at each checkpoint, for the window estimate
  for (index_t k = 1; k <= cap; ++k) {
    harmonic.add(1.0 / (double)k);
    if (set.contains(k, sieve)) {
      ++count;
      logsum.add(1.0 / (double)k);
    }
    double a = (double)count / (double)k;
    amin = std::min(amin, a);
    amax = std::max(amax, a);
    while (next < checkpoints.size() && checkpoints[next] == k) {
      DensityRow r;
      r.n = k;
      r.count = count;
      r.arithmetic = a;
      r.arith_lower = amin;
      r.arith_upper = amax;
      r.log_hnorm = logsum.value() / harmonic.value();
      r.log_raw = logsum.value() / std::log((double)k);
      r.chain_ok = r.arith_lower <= r.log_hnorm + 1e-12 && r.log_hnorm <= r.arith_upper + 1e-12;
      rep.rows.push_back(r);
      l_at.push_back(logsum.value());
      ++next;
    }
  }
  if (checkpoints.size() >= 2) {
    rep.windowed_log_estimate = (l_at.back() - l_at.front()) /
                                std::log((double)checkpoints.back() / (double)checkpoints.front());
  } else {
    rep.windowed_log_estimate = rep.rows.back().log_hnorm;
  }

  double dhat = rep.rows.back().arithmetic;
  for (double sigma : sigma_grid) {
    AnalyticRow ar;
    ar.sigma = sigma;
    KahanSum s_set;
    for (index_t n = 1; n <= cap; ++n) {
      if (set.contains(n, sieve)) s_set.add(std::pow((double)n, -sigma));
    }
    ar.raw = (sigma - 1.0) * s_set.value();
    ar.tail_completed = ar.raw + dhat * std::pow((double)cap, 1.0 - sigma);
    if (rep.is_prime_subset) {
      KahanSum pa, pall, pa_tail, pall_tail;
      for (std::uint32_t p : sieve.primes()) {
        index_t pp = (index_t)p;
        if (pp > cap) break;
        double w = std::pow((double)pp, -sigma);
        pall.add(w);
        if (pp > 1000) pall_tail.add(w);
        if (set.contains(pp, sieve)) {
          pa.add(w);
          if (pp > 1000) pa_tail.add(w);
        }
      }
      ar.prime_ratio = pa.value() / pall.value();
      ar.prime_ratio_tail = pall_tail.value() > 0.0 ? pa_tail.value() / pall_tail.value() : 0.0;
    }
    rep.analytic.push_back(ar);
  }
  return rep;
}

std::string DensityReport::to_csv() const {
  std::string out =
      "kind,n_or_sigma,count,arithmetic,arith_lower,arith_upper,log_hnorm,log_raw,chain_ok,"
      "raw,tail_completed,prime_ratio,prime_ratio_tail\n";
  char buf[320];
  for (const DensityRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "checkpoint,%lld,%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%d,,,,\n",
                  (long long)r.n, (long long)r.count, r.arithmetic, r.arith_lower, r.arith_upper,
                  r.log_hnorm, r.log_raw, r.chain_ok ? 1 : 0);
    out += buf;
  }
  for (const AnalyticRow& a : analytic) {
    std::snprintf(buf, sizeof(buf), "analytic,%.17g,,,,,,,,%.17g,%.17g,%.17g,%.17g\n", a.sigma,
                  a.raw, a.tail_completed, a.prime_ratio, a.prime_ratio_tail);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "windowed_log_estimate,,,,,,,,,%.17g,,,\n",
                windowed_log_estimate);
  out += buf;
  return out;
}

}  // namespace logsum
