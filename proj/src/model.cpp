// Copyright 2026 The hhc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hhc/model.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hhc {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_double(std::string_view s, std::string_view spec) {
  double v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw std::invalid_argument("model spec '" + std::string(spec) + "': bad number '" +
                                std::string(s) + "'");
  return v;
}

}  // namespace

WeightModel WeightModel::gaussian(double mu, double eta) {
  WeightModel m{Family::Gaussian, mu, 0.0, eta};
  m.validate();
  return m;
}

WeightModel WeightModel::poisson(double lambda, double mu, double eta) {
  WeightModel m{Family::Poisson, lambda, mu, eta};
  m.validate();
  return m;
}

WeightModel WeightModel::bernoulli(double p, double q, double eta) {
  WeightModel m{Family::Bernoulli, p, q, eta};
  m.validate();
  return m;
}

void WeightModel::validate() const {
  if (!(erasure >= 0.0 && erasure < 1.0))
    throw std::invalid_argument("WeightModel: erasure probability must lie in [0,1)");
  switch (family) {
    case Family::Gaussian:
      if (!(p_param >= 0.0) || !std::isfinite(p_param))
        throw std::invalid_argument("WeightModel: Gaussian mean must be finite and >= 0");
      break;
    case Family::Poisson:
      if (!(q_param > 0.0) || !(p_param >= q_param) || !std::isfinite(p_param))
        throw std::invalid_argument("WeightModel: Poisson needs lambda >= mu > 0");
      break;
    case Family::Bernoulli:
      if (!(q_param > 0.0) || !(p_param >= q_param) || !(p_param < 1.0))
        throw std::invalid_argument("WeightModel: Bernoulli needs 1 > p >= q > 0");
      break;
  }
}

bool WeightModel::degenerate() const {
  return family == Family::Gaussian ? p_param == 0.0 : p_param == q_param;
}

WeightModel WeightModel::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  std::map<std::string, double, std::less<>> kv;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos)
        throw std::invalid_argument("model spec '" + std::string(spec) + "': expected key=value");
      kv[std::string(item.substr(0, eq))] = parse_double(item.substr(eq + 1), spec);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }
  const auto take = [&](const char* key) -> double {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::invalid_argument("model spec '" + std::string(spec) + "': missing " + key);
    const double v = it->second;
    kv.erase(it);
    return v;
  };
  double eta = 0.0;
  if (auto it = kv.find("eta"); it != kv.end()) {
    eta = it->second;
    kv.erase(it);
  }
  WeightModel m;
  if (name == "gaussian") {
    if (kv.count("mu2"))
      m = gaussian(std::sqrt(take("mu2")), eta);
    else
      m = gaussian(take("mu"), eta);
  } else if (name == "poisson") {
    const double lambda = take("lambda");
    m = poisson(lambda, take("mu"), eta);
  } else if (name == "bernoulli") {
    const double p = take("p");
    m = bernoulli(p, take("q"), eta);
  } else {
    throw std::invalid_argument("model spec '" + std::string(spec) +
                                "': family must be gaussian, poisson or bernoulli");
  }
  if (!kv.empty())
    throw std::invalid_argument("model spec '" + std::string(spec) + "': unknown key " +
                                kv.begin()->first);
  return m;
}

std::string WeightModel::to_string() const {
  std::string s;
  switch (family) {
    case Family::Gaussian:
      s = "gaussian:mu=" + fmt_double(p_param);
      break;
    case Family::Poisson:
      s = "poisson:lambda=" + fmt_double(p_param) + ",mu=" + fmt_double(q_param);
      break;
    case Family::Bernoulli:
      s = "bernoulli:p=" + fmt_double(p_param) + ",q=" + fmt_double(q_param);
      break;
  }
  if (erasure > 0.0) s += ",eta=" + fmt_double(erasure);
  return s;
}

WeightModel WeightModel::with_parameter(std::string_view name, double value) const {
  WeightModel m = *this;
  if (name == "eta") {
    m.erasure = value;
  } else if (family == Family::Gaussian && name == "mu") {
    m.p_param = value;
  } else if (family == Family::Gaussian && name == "mu2") {
    if (value < 0) throw std::invalid_argument("with_parameter: mu2 must be >= 0");
    m.p_param = std::sqrt(value);
  } else if (family == Family::Poisson && name == "lambda") {
    m.p_param = value;
  } else if (family == Family::Poisson && name == "mu") {
    m.q_param = value;
  } else if (family == Family::Bernoulli && name == "p") {
    m.p_param = value;
  } else if (family == Family::Bernoulli && name == "q") {
    m.q_param = value;
  } else {
    throw std::invalid_argument("with_parameter: '" + std::string(name) +
                                "' is not a parameter of " + to_string());
  }
  m.validate();
  return m;
}

double WeightModel::llr(double x) const {
  switch (family) {
    case Family::Gaussian:
      if (!std::isfinite(x)) throw std::invalid_argument("llr: Gaussian observation must be finite");
      return p_param * x - 0.5 * p_param * p_param;
    case Family::Poisson:
      if (!(x >= 0.0) || x != std::floor(x))
        throw std::invalid_argument("llr: Poisson observation must be a nonnegative integer");
      return x * std::log(p_param / q_param) - (p_param - q_param);
    case Family::Bernoulli:
      if (x == 1.0) return std::log(p_param / q_param);
      if (x == 0.0) return std::log((1.0 - p_param) / (1.0 - q_param));
      throw std::invalid_argument("llr: Bernoulli observation must be 0 or 1");
  }
  return 0.0;
}

double WeightModel::llr_relaxed(double score) const {
  if (family == Family::Poisson) {
    if (!std::isfinite(score)) throw std::invalid_argument("llr_relaxed: non-finite score");
    return score * std::log(p_param / q_param) - (p_param - q_param);
  }
  return llr(score);
}

WeightedGraph loglik_transform(const WeightedGraph& raw, const WeightModel& m) {
  Eigen::VectorXd w(raw.edges());
  for (Index e = 0; e < raw.edges(); ++e) w[e] = is_erased(raw[e]) ? 0.0 : m.llr(raw[e]);
  return WeightedGraph(raw.vertices(), std::move(w));
}

}  // namespace hhc
