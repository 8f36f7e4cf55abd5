#ifndef RCX_REPORT_HPP
#define RCX_REPORT_HPP

#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <json.hpp>

#include "rcx/errors.hpp"
#include "rcx/statistic.hpp"

namespace rcx {

using Json = nlohmann::ordered_json;

enum class Provenance { analytic, exact_oracle, empirical };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::analytic: return "analytic";
    case Provenance::exact_oracle: return "exact-oracle";
    case Provenance::empirical: return "empirical";
  }
  return "?";
}

inline Json to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline Json to_json(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(std::move(row));
  }
  return a;
}

inline Json spec_params(const StatisticSpec& s, double p) {
  Json j;
  j["n"] = s.n;
  j["p"] = p;
  j["d"] = s.d;
  if (s.kind == StatisticKind::link) {
    j["t"] = Json(std::vector<int>(s.t.vertices().begin(), s.t.vertices().end()));
    j["t_size"] = s.t_size();
  }
  return j;
}

/// Mean vector and covariance matrix of a count vector. For critical counts
/// only the diagonal is analytic; `off_diagonal` records where the rest came
/// from.
struct MomentReport {
  StatisticKind kind = StatisticKind::clique;
  Json params = Json::object();
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  Provenance provenance = Provenance::analytic;
  Provenance off_diagonal = Provenance::analytic;

  Eigen::VectorXd sigma() const { return cov.diagonal().cwiseMax(0.0).cwiseSqrt(); }

  Json to_json() const {
    Json j;
    j["kind"] = std::string(to_string(kind));
    j["params"] = params;
    j["mean"] = rcx::to_json(mean);
    j["cov"] = rcx::to_json(cov);
    j["provenance"] = std::string(to_string(provenance));
    if (off_diagonal != provenance) j["off_diagonal_provenance"] = std::string(to_string(off_diagonal));
    return j;
  }
};

}  // namespace rcx

#endif  // RCX_REPORT_HPP
