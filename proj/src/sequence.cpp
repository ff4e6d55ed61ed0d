#include "logsum/sequence.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "logsum/kahan.hpp"

namespace logsum {

namespace {

constexpr index_t kExplicitCap = 100000000;  // 1e8 entries

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

}  // namespace

Sequence Sequence::constant(double c) {
  Sequence s;
  s.fn_ = [c](index_t) { return c; };
  s.limit_ = c;
  // |ell - normalized movavg| ~ gamma*|c|/log n
  s.drift_bound_ = [c](index_t n) { return (std::abs(c) + 0.5) / std::log((double)n); };
  s.name_ = "const:" + std::to_string(c);
  return s;
}

Sequence Sequence::alternating01() {
  Sequence s;
  s.fn_ = [](index_t n) { return (n % 2 == 0) ? 1.0 : 0.0; };
  s.limit_ = 0.5;
  s.drift_bound_ = [](index_t n) { return 2.0 / std::log((double)n); };
  s.name_ = "alt01";
  return s;
}

Sequence Sequence::alternating_sign() {
  Sequence s;
  s.fn_ = [](index_t n) { return (n % 2 == 0) ? 1.0 : -1.0; };
  s.limit_ = 0.0;
  s.drift_bound_ = [](index_t n) { return 2.0 / std::log((double)n); };
  s.name_ = "altsign";
  return s;
}

Sequence Sequence::slow_drift(double c, double b) {
  Sequence s;
  s.fn_ = [c, b](index_t n) { return c + b / std::log((double)n + 2.0); };
  s.limit_ = c;
  s.drift_bound_ = [c, b](index_t n) {
    double ln = std::log((double)n);
    return (std::abs(c) + 0.5 + 2.0 * std::abs(b) * std::log(ln)) / ln;
  };
  s.name_ = "slowdrift";
  return s;
}

Sequence Sequence::log_oscillation(double amp, double freq) {
  Sequence s;
  s.fn_ = [amp, freq](index_t n) { return amp * std::sin(freq * std::log((double)n + 2.0)); };
  s.name_ = "logosc";
  return s;
}

Sequence Sequence::from_values(std::vector<double> values) {
  Sequence s;
  if ((index_t)values.size() > kExplicitCap) {
    throw std::length_error("Sequence: explicit sequence exceeds 1e8 entries");
  }
  auto data = std::make_shared<std::vector<double>>(std::move(values));
  index_t len = (index_t)data->size();
  s.fn_ = [data, len](index_t n) -> double {
    if (n >= len) {
      throw std::out_of_range("Sequence: index " + std::to_string(n) +
                              " beyond explicit length " + std::to_string(len));
    }
    return (*data)[(size_t)n];
  };
  s.length_ = len;
  s.name_ = "explicit";
  return s;
}

Sequence Sequence::from_function(std::function<double(index_t)> fn, std::optional<double> limit) {
  Sequence s;
  s.fn_ = std::move(fn);
  s.limit_ = limit;
  return s;
}

Sequence Sequence::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("Sequence: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("Sequence: empty file " + path);
  // strip potential BOM / whitespace
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  if (line != "s") throw std::runtime_error("Sequence: expected header \"s\" in " + path);
  std::vector<double> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    vals.push_back(std::stod(line));
  }
  auto s = from_values(std::move(vals));
  s.name_ = "file:" + path;
  return s;
}

Sequence Sequence::parse(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "const") {
    if (args.empty()) throw std::invalid_argument("const requires a value, e.g. const:1");
    return constant(std::stod(args));
  }
  if (head == "zero") return zero();
  if (head == "alt01") return alternating01();
  if (head == "altsign") return alternating_sign();
  if (head == "slowdrift") {
    auto p = split(args, ',');
    if (p.size() != 2) throw std::invalid_argument("slowdrift requires c,b");
    return slow_drift(std::stod(p[0]), std::stod(p[1]));
  }
  if (head == "logosc") {
    auto p = split(args, ',');
    if (p.size() != 2) throw std::invalid_argument("logosc requires amp,freq");
    return log_oscillation(std::stod(p[0]), std::stod(p[1]));
  }
  if (head == "file") {
    if (args.empty()) throw std::invalid_argument("file requires a path");
    return from_csv(args);
  }
  throw std::invalid_argument("unknown sequence spec: " + spec);
}

double Sequence::operator()(index_t n) const {
  if (n < 0) throw std::out_of_range("Sequence: negative index");
  return fn_(n);
}

std::optional<double> Sequence::drift_bound(index_t n) const {
  if (!drift_bound_) return std::nullopt;
  return drift_bound_(n);
}

double weighted_tail_sum(const Sequence& seq, index_t lo, index_t hi) {
  if (lo < 0 || lo > hi) throw std::domain_error("weighted_tail_sum: need 0 <= lo <= hi");
  KahanSum acc;
  for (index_t i = lo + 1; i <= hi; ++i) acc.add(seq(i) / (double)(i + 1));
  return acc.value();
}

double u_function(const Sequence& seq, double x) {
  if (!(x >= 0.0)) throw std::domain_error("u_function: need x >= 0");
  index_t n = (index_t)std::floor(x);
  return seq(0) + weighted_tail_sum(seq, 0, n);
}

std::vector<double> u_function_at(const Sequence& seq, const std::vector<index_t>& indices) {
  std::vector<double> out;
  out.reserve(indices.size());
  KahanSum acc;
  index_t i = 0;
  for (index_t target : indices) {
    if (target < 0 || (!out.empty() && target < indices[out.size() - 1])) {
      throw std::domain_error("u_function_at: indices must be sorted and non-negative");
    }
    for (; i <= target; ++i) acc.add(seq(i) / (double)(i + 1));
    out.push_back(acc.value());
  }
  return out;
}

}  // namespace logsum
