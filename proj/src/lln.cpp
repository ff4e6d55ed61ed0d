#include "logsum/lln.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "logsum/kahan.hpp"
#include "logsum/special_functions.hpp"
#include "logsum/transforms.hpp"

namespace logsum {

namespace {

constexpr index_t kMomentHorizonCap = 1000000000;  // 1e9
constexpr index_t kCenteringCacheCap = 40000000;   // entries of the m_k cache
constexpr double kIvSeriesTol = 1e-8;
constexpr int kIvLookahead = 40;  // m_k precomputed to this multiple of max h

double g_llogl(double n) { return n <= 0.0 ? 0.0 : n / (1.0 + std::log(n)); }

void finish_series(SeriesCheck& s) {
  size_t m = s.partial.size();
  s.verdict = "inconclusive";
  if (m < 4) return;
  size_t start = m / 2;
  double scale = std::max(1.0, s.partial.back());
  bool vanishing = true;
  for (size_t j = start; j < m; ++j) {
    if (s.partial[j] - s.partial[j - 1] > 1e-14 * scale) vanishing = false;
  }
  if (vanishing) {
    s.verdict = "convergent";
    s.decay_exponent = 99.0;
    return;
  }
  // least-squares fit of log(block increment) against log(block index)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (size_t j = start; j < m; ++j) {
    double d = s.partial[j] - s.partial[j - 1];
    if (d <= 0.0) d = 1e-300;
    double x = std::log(std::log2((double)s.checkpoints[j]));
    double y = std::log(d);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  s.decay_exponent = -slope;
  if (s.decay_exponent >= 1.3) {
    s.verdict = "convergent";
  } else if (s.decay_exponent <= 1.15) {
    s.verdict = "divergent";
  }
}

std::vector<index_t> dyadic_checkpoints(index_t horizon) {
  std::vector<index_t> cps;
  for (index_t c = 2; c <= horizon; c *= 2) cps.push_back(c);
  return cps;
}

// log-log interpolated P[|X| > t] for the heavy-tailed laws, so the
// exceedance loop does not run a quadrature per term; exact below the dense
// table boundary
class TailCurve {
 public:
  TailCurve(const IntLaw& law, double t_max) : law_(&law) {
    zipf_ = law.family() == IntLaw::Family::zipf_plain ||
            law.family() == IntLaw::Family::zipf_log1 ||
            law.family() == IntLaw::Family::zipf_log2;
    if (!zipf_) return;
    double t = kKnot0;
    while (t <= t_max * kRatio) {
      knots_.push_back(std::log(std::max(law.tail(t), 1e-300)));
      t *= kRatio;
    }
  }
  double operator()(double t) const {
    if (!zipf_ || t < kKnot0) return law_->tail(t);
    double pos = std::log(t / kKnot0) / std::log(kRatio);
    size_t i = (size_t)pos;
    if (i + 1 >= knots_.size()) return std::exp(knots_.back());
    double frac = pos - (double)i;
    return std::exp(knots_[i] * (1.0 - frac) + knots_[i + 1] * frac);
  }

 private:
  static constexpr double kKnot0 = 60000.0;
  static constexpr double kRatio = 1.0905077326652577;  // 2^(1/8)
  const IntLaw* law_;
  bool zipf_ = false;
  std::vector<double> knots_;
};

double quantile_abs(std::vector<double> v, double q) {
  for (double& x : v) x = std::abs(x);
  std::sort(v.begin(), v.end());
  if (v.empty()) return 0.0;
  double pos = q * (double)(v.size() - 1);
  size_t i = (size_t)pos;
  if (i + 1 >= v.size()) return v.back();
  double frac = pos - (double)i;
  return v[i] * (1.0 - frac) + v[i + 1] * frac;
}

int statement_code(const std::string& st) {
  if (st == "ii") return 2;
  if (st == "iii") return 3;
  if (st == "iv") return 4;
  if (st == "vi") return 6;
  if (st == "vii") return 7;
  if (st == "viii") return 8;
  if (st == "ix") return 9;
  throw std::invalid_argument("simulate_statement: unknown statement id " + st);
}

struct IvState {
  std::vector<double> xs;
  SplitMix64 rng;
  explicit IvState(std::uint64_t seed) : rng(seed) {}
};

std::vector<double> run_replica(const IntLaw& law, int st, const std::vector<index_t>& hs,
                                std::uint64_t seed, const std::vector<double>& m,
                                const std::vector<double>& mp, double beta, double gamma,
                                double eps) {
  index_t N = hs.back();
  std::vector<double> out(hs.size(), 0.0);
  auto m_at = [&](index_t i) { return m.empty() ? 0.0 : m[(size_t)i]; };

  if (st == 4) {
    auto state = std::make_shared<IvState>(seed);
    const IntLaw* lawp = &law;
    const std::vector<double>* mptr = &m;
    Sequence s = Sequence::from_function([state, lawp, mptr](index_t i) -> double {
      if (i == 0) return 0.0;
      while ((index_t)state->xs.size() < i) {
        state->xs.push_back((double)lawp->sample(state->rng));
      }
      double mi = 0.0;
      if (!mptr->empty()) {
        if ((size_t)i >= mptr->size()) {
          throw std::length_error("simulate_statement: centering cache exhausted");
        }
        mi = (*mptr)[(size_t)i];
      }
      return state->xs[(size_t)(i - 1)] - mi;
    });
    for (size_t j = 0; j < hs.size(); ++j) {
      out[j] = L_transform(s, 1.0 - 1.0 / (double)hs[j], kIvSeriesTol);
    }
    return out;
  }

  SplitMix64 rng(seed);
  KahanSum acc;                 // statement-specific running sum
  std::vector<double> prefix;   // vii: centered prefix; ix: raw X prefix
  if (st == 7 || st == 9) {
    prefix.reserve((size_t)N + 1);
    prefix.push_back(0.0);
  }
  size_t next_h = 0;
  for (index_t i = 1; i <= N; ++i) {
    double x = (double)law.sample(rng);
    switch (st) {
      case 2:
        if (i >= 2) {
          double r = std::abs(x) / ((double)i * std::log((double)i));
          for (size_t j = 0; j < hs.size(); ++j) {
            if (hs[j] >= i && hs[j] < 2 * i) out[j] = std::max(out[j], r);
          }
        }
        break;
      case 3: acc.add((x - m_at(i)) / (double)(i + 1)); break;
      case 6: acc.add(x - m_at(i)); break;
      case 7:
        acc.add(x - m_at(i));
        prefix.push_back(acc.value());
        break;
      case 8: acc.add(x); break;
      case 9:
        acc.add(x);
        prefix.push_back(acc.value());
        break;
    }
    while (next_h < hs.size() && hs[next_h] == i) {
      index_t h = i;
      switch (st) {
        case 3: out[next_h] = acc.value() / std::log((double)h + 1.0); break;
        case 6: out[next_h] = acc.value() / phi((double)h); break;
        case 7: {
          index_t w = (index_t)std::floor(phi_inv(phi((double)h) / beta));
          if (w < 0) w = 0;
          if (w > h) w = h;
          out[next_h] = (prefix[(size_t)h] - prefix[(size_t)w]) / phi((double)h);
          break;
        }
        case 8: {
          index_t K = (index_t)std::floor((double)h / (gamma - 1.0));
          double center = mp.empty() ? 0.0 : mp[(size_t)(h + K)] - mp[(size_t)K];
          double thresh = phi((double)h / (gamma - 1.0)) * eps;
          out[next_h] = std::abs(acc.value() - center) > thresh ? 1.0 : 0.0;
          break;
        }
        case 9: {
          index_t K = (index_t)std::floor((double)h / (gamma - 1.0));
          double mpK = mp.empty() ? 0.0 : mp[(size_t)K];
          double best = 0.0;
          for (index_t k = 1; k <= h; ++k) {
            double center = mp.empty() ? 0.0 : mp[(size_t)(k + K)] - mpK;
            best = std::max(best, std::abs(prefix[(size_t)k] - center));
          }
          double thresh = phi((double)h / (gamma - 1.0)) * eps;
          out[next_h] = best > thresh ? 1.0 : 0.0;
          break;
        }
        default: break;  // ii filled during the pass
      }
      ++next_h;
    }
  }
  return out;
}

}  // namespace

MomentCheck moment_check(const IntLaw& law, index_t horizon) {
  if (horizon < 4) throw std::domain_error("moment_check: need horizon >= 4");
  if (horizon > kMomentHorizonCap) throw std::domain_error("moment_check: horizon above 1e9");
  MomentCheck out;
  out.law_has_llogl = law.has_llogl();
  out.law_has_mean = law.has_mean();
  std::vector<index_t> cps = dyadic_checkpoints(horizon);
  out.llogl.checkpoints = cps;
  out.mean.checkpoints = cps;

  if (law.family() == IntLaw::Family::two_point) {
    // bounded support: both partial sums are flat once past max |value|
    for (index_t c : cps) {
      double l = 0.0, mn = 0.0;
      for (const auto& [v, p] : law.atoms()) {
        if (std::llabs(v) <= c) {
          l += p * g_llogl((double)std::llabs(v));
          mn += p * (double)std::llabs(v);
        }
      }
      out.llogl.partial.push_back(l);
      out.mean.partial.push_back(mn);
    }
  } else {
    KahanSum l, mn;
    size_t next = 0;
    for (index_t n = law.family() == IntLaw::Family::poisson_like ? 0 : 2; n <= horizon; ++n) {
      double p = law.pmf(n);
      l.add(p * g_llogl((double)n));
      mn.add(p * (double)n);
      while (next < cps.size() && cps[next] == n) {
        out.llogl.partial.push_back(l.value());
        out.mean.partial.push_back(mn.value());
        ++next;
      }
    }
    while (next < cps.size()) {  // poisson table exhausted before the horizon
      out.llogl.partial.push_back(l.value());
      out.mean.partial.push_back(mn.value());
      ++next;
    }
  }
  finish_series(out.llogl);
  finish_series(out.mean);
  return out;
}

std::vector<double> truncated_means(const IntLaw& law, index_t k_max) {
  if (k_max < 0) throw std::domain_error("truncated_means: need k_max >= 0");
  if (k_max >= kCenteringCacheCap) {
    throw std::length_error("truncated_means: cache above the 4e7-entry budget");
  }
  std::vector<double> m((size_t)k_max + 1, 0.0);
  if (law.is_symmetric()) return m;

  if (law.family() == IntLaw::Family::two_point) {
    for (index_t k = 0; k <= k_max; ++k) {
      double cutoff = phi((double)k + 1.0);
      double acc = 0.0;
      for (const auto& [v, p] : law.atoms()) {
        if ((double)std::llabs(v) <= cutoff) acc += p * (double)v;
      }
      m[(size_t)k] = acc;
    }
    return m;
  }
  // positive unbounded law: one running pointer over the support
  KahanSum partial;
  index_t ptr = law.family() == IntLaw::Family::poisson_like ? 0 : 2;
  for (index_t k = 0; k <= k_max; ++k) {
    index_t cutoff = (index_t)std::floor(phi((double)k + 1.0));
    for (; ptr <= cutoff; ++ptr) partial.add((double)ptr * law.pmf(ptr));
    m[(size_t)k] = partial.value();
  }
  return m;
}

double truncated_mean(const IntLaw& law, index_t k) {
  if (k < 0) throw std::domain_error("truncated_mean: need k >= 0");
  if (law.is_symmetric()) return 0.0;
  if (law.family() == IntLaw::Family::two_point) {
    double cutoff = phi((double)k + 1.0);
    double acc = 0.0;
    for (const auto& [v, p] : law.atoms()) {
      if ((double)std::llabs(v) <= cutoff) acc += p * (double)v;
    }
    return acc;
  }
  index_t cutoff = (index_t)std::floor(phi((double)k + 1.0));
  KahanSum acc;
  for (index_t n = law.family() == IntLaw::Family::poisson_like ? 0 : 2; n <= cutoff; ++n) {
    acc.add((double)n * law.pmf(n));
  }
  return acc.value();
}

SimReport simulate_statement(const std::string& statement, const IntLaw& law,
                             const std::vector<index_t>& horizons, int replicas,
                             std::uint64_t master_seed, double beta, double gamma, double epsilon,
                             int threads) {
  int st = statement_code(statement);
  if (replicas < 1) throw std::domain_error("simulate_statement: need replicas >= 1");
  if (horizons.empty()) throw std::domain_error("simulate_statement: empty horizon list");
  if (horizons.front() < 2) throw std::domain_error("simulate_statement: need horizons >= 2");
  for (size_t j = 1; j < horizons.size(); ++j) {
    if (horizons[j] <= horizons[j - 1]) {
      throw std::domain_error("simulate_statement: horizons must be strictly increasing");
    }
  }
  if ((st == 7 && !(beta > 1.0)) || ((st == 8 || st == 9) && !(gamma > 1.0))) {
    throw std::domain_error("simulate_statement: need beta > 1 / gamma > 1");
  }
  if ((st == 8 || st == 9) && !(epsilon > 0.0)) {
    throw std::domain_error("simulate_statement: need epsilon > 0");
  }

  index_t maxh = horizons.back();
  std::vector<double> m, mp;
  if (!law.is_symmetric() && st != 2) {
    index_t need = maxh;
    if (st == 4) need = maxh * kIvLookahead;
    if (st == 8 || st == 9) need = maxh + (index_t)std::floor((double)maxh / (gamma - 1.0)) + 1;
    m = truncated_means(law, need);
    if (st == 8 || st == 9) {
      mp.assign(m.size() + 1, 0.0);
      KahanSum acc;
      for (size_t k = 1; k < m.size(); ++k) {
        acc.add(m[k]);
        mp[k] = acc.value();
      }
      mp[m.size()] = mp[m.size() - 1];
    }
  }

  SimReport rep;
  rep.statement = statement;
  rep.law = law.name();
  rep.master_seed = master_seed;
  rep.beta = beta;
  rep.gamma = gamma;
  rep.epsilon = epsilon;
  rep.horizons = horizons;
  for (int r = 0; r < replicas; ++r) rep.replica_seeds.push_back(replica_seed(master_seed, (std::uint64_t)r));
  rep.trajectories.assign((size_t)replicas, {});

  int T = std::max(1, std::min(threads, replicas));
  std::atomic<int> next{0};
  std::mutex err_mu;
  std::exception_ptr first_err;
  auto worker = [&]() {
    for (;;) {
      int r = next.fetch_add(1);
      if (r >= replicas) return;
      try {
        rep.trajectories[(size_t)r] =
            run_replica(law, st, horizons, rep.replica_seeds[(size_t)r], m, mp, beta, gamma,
                        epsilon);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!first_err) first_err = std::current_exception();
        return;
      }
    }
  };
  if (T == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < T; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_err) std::rethrow_exception(first_err);

  for (size_t j = 0; j < horizons.size(); ++j) {
    std::vector<double> col;
    col.reserve((size_t)replicas);
    for (int r = 0; r < replicas; ++r) col.push_back(rep.trajectories[(size_t)r][j]);
    rep.median_abs.push_back(quantile_abs(col, 0.5));
    rep.q90_abs.push_back(quantile_abs(col, 0.9));
    if (st == 8 || st == 9) {
      double p = 0.0;
      for (double v : col) p += v;
      p /= (double)replicas;
      rep.prob_estimate.push_back(p);
      double prev = j == 0 ? 1.0 : (double)horizons[j - 1];
      double block = p * std::log((double)horizons[j] / prev);
      rep.series_partial.push_back((j == 0 ? 0.0 : rep.series_partial.back()) + block);
    }
  }
  return rep;
}

SeriesCheck exceedance_series(const IntLaw& law, double epsilon, index_t horizon) {
  if (!(epsilon > 0.0)) throw std::domain_error("exceedance_series: need epsilon > 0");
  if (horizon < 4) throw std::domain_error("exceedance_series: need horizon >= 4");
  if (horizon > kMomentHorizonCap) throw std::domain_error("exceedance_series: horizon above 1e9");
  SeriesCheck out;
  out.checkpoints = dyadic_checkpoints(horizon);
  TailCurve tail(law, epsilon * (double)horizon * std::log((double)horizon));
  KahanSum acc;
  size_t next = 0;
  for (index_t n = 1; n <= horizon; ++n) {
    acc.add(tail(epsilon * (double)n * std::log((double)n)));
    while (next < out.checkpoints.size() && out.checkpoints[next] == n) {
      out.partial.push_back(acc.value());
      ++next;
    }
  }
  finish_series(out);
  return out;
}

std::string SimReport::to_json() const {
  nlohmann::json j;
  j["statement"] = statement;
  j["law"] = law;
  j["master_seed"] = master_seed;
  j["beta"] = beta;
  j["gamma"] = gamma;
  j["epsilon"] = epsilon;
  j["horizons"] = horizons;
  j["replica_seeds"] = replica_seeds;
  j["median_abs"] = median_abs;
  j["q90_abs"] = q90_abs;
  if (!prob_estimate.empty()) {
    j["prob_estimate"] = prob_estimate;
    j["series_partial"] = series_partial;
  }
  return j.dump(2);
}

std::string SimReport::to_csv() const {
  std::string out = "statement,horizon,stat,value\n";
  char buf[128];
  auto row = [&](index_t h, const char* stat, double v) {
    std::snprintf(buf, sizeof(buf), "%s,%lld,%s,%.17g\n", statement.c_str(), (long long)h, stat,
                  v);
    out += buf;
  };
  for (size_t j = 0; j < horizons.size(); ++j) {
    row(horizons[j], "median_abs", median_abs[j]);
    row(horizons[j], "q90_abs", q90_abs[j]);
    if (!prob_estimate.empty()) {
      row(horizons[j], "prob_estimate", prob_estimate[j]);
      row(horizons[j], "series_partial", series_partial[j]);
    }
  }
  return out;
}

}  // namespace logsum
