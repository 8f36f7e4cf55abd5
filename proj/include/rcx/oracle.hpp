#ifndef RCX_ORACLE_HPP
#define RCX_ORACLE_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "rcx/graph.hpp"
#include "rcx/report.hpp"
#include "rcx/statistic.hpp"

namespace rcx {

/// Law of a count vector over all graphs on n <= 6 vertices.
struct ExactDistribution {
  StatisticSpec spec;
  double p = 0.5;
  std::map<std::vector<std::int64_t>, double> mass;  // sorted support

  double total() const {
    double s = 0.0;
    for (const auto& [v, w] : mass) s += w;
    return s;
  }

  double probability(const std::vector<std::int64_t>& v) const {
    auto it = mass.find(v);
    return it == mass.end() ? 0.0 : it->second;
  }

  Json to_json() const {
    Json j;
    j["kind"] = std::string(to_string(spec.kind));
    j["params"] = spec_params(spec, p);
    Json support = Json::array(), probs = Json::array();
    for (const auto& [v, w] : mass) {
      support.push_back(v);
      probs.push_back(w);
    }
    j["support"] = std::move(support);
    j["probabilities"] = std::move(probs);
    return j;
  }
};

/// Enumerates every graph in edge-mask order. Zero-probability graphs (p at
/// 0 or 1) are skipped.
inline ExactDistribution exact_distribution(const StatisticSpec& spec, double p) {
  spec.validate();
  require(p >= 0.0 && p <= 1.0, "exact_distribution: need p in [0,1]");
  ExactDistribution out{spec, p, {}};
  for (auto it = all_graphs(spec.n).begin(), end = all_graphs(spec.n).end(); it != end; ++it) {
    const Graph g = *it;
    const double w = graph_probability(g, p);
    if (w == 0.0) continue;
    out.mass[count_vector(g, spec)] += w;
  }
  return out;
}

inline MomentReport exact_moments(const ExactDistribution& dist) {
  const int d = dist.spec.d;
  MomentReport r;
  r.kind = dist.spec.kind;
  r.params = spec_params(dist.spec, dist.p);
  r.provenance = r.off_diagonal = Provenance::exact_oracle;
  r.mean = Eigen::VectorXd::Zero(d);
  r.cov = Eigen::MatrixXd::Zero(d, d);
  for (const auto& [v, w] : dist.mass)
    for (int i = 0; i < d; ++i) r.mean(i) += w * static_cast<double>(v[static_cast<std::size_t>(i)]);
  for (const auto& [v, w] : dist.mass)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        r.cov(i, j) += w * (static_cast<double>(v[static_cast<std::size_t>(i)]) - r.mean(i)) *
                       (static_cast<double>(v[static_cast<std::size_t>(j)]) - r.mean(j));
  return r;
}

inline MomentReport exact_moments(const StatisticSpec& spec, double p) {
  return exact_moments(exact_distribution(spec, p));
}

}  // namespace rcx

#endif  // RCX_ORACLE_HPP
