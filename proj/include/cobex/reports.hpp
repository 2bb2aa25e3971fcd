#pragma once
// Report serialization. JSON reports embed the tool version, the run
// configuration, and exactness flags, and never carry wall-clock fields:
// identical configuration and seed must serialize to identical bytes.
// CSV output is the opposite trade — it carries timings and is headed by
// a versioned schema comment so downstream scripts can detect drift.

#include "cobex/covers.hpp"
#include "cobex/duality.hpp"
#include "cobex/expansion.hpp"
#include "cobex/isoperimetry.hpp"
#include "cobex/json_io.hpp"
#include "cobex/metric.hpp"
#include "cobex/version.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace cobex {

inline Json report_envelope(const std::string& command, Json config) {
  Json j;
  j["tool"] = "cobex";
  j["version"] = COBEX_VERSION_STRING;
  j["command"] = command;
  j["config"] = std::move(config);
  return j;
}

// ---- expansion ----------------------------------------------------------

inline Json expansion_to_json(const ExpansionReport& rep) {
  Json j;
  j["complex"] = rep.complex_name;
  j["degree"] = rep.degree;
  j["coeff"] = rep.group_name;
  j["variant"] = variant_name(rep.variant);
  j["measured_against"] = subgroup_name(rep.measured_against);
  j["lambda"] = ext_rational_to_json(rep.lambda);
  j["exact"] = rep.exact;
  j["algorithm"] = rep.algorithm;
  j["flags"] = rep.flags;
  if (rep.witness) {
    j["witness"] = cochain_to_json(*rep.witness);
    j["witness_dstar_norm"] = rep.witness_dstar_norm;
    j["witness_distance"] = rep.witness_distance;
  }
  // cosets_examined is the table size, identical for any worker count;
  // the raw enumeration count is scheduling-shaped work and stays out so
  // reports are byte-identical across --workers
  j["cosets_examined"] = rep.cosets_examined;
  if (!rep.leader_weight_histogram.empty())
    j["leader_weight_histogram"] = rep.leader_weight_histogram;
  return j;
}

namespace detail {

inline std::string csv_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

inline std::string csv_support(const std::optional<Cochain>& w) {
  if (!w) return "";
  std::ostringstream os;
  bool first = true;
  for (auto& [cell, v] : w->entries()) {
    (void)v;
    if (!first) os << ';';
    os << cell;
    first = false;
  }
  return os.str();
}

}  // namespace detail

inline std::string expansion_csv(const std::vector<ExpansionReport>& reps) {
  std::ostringstream os;
  os << "# cobex-csv v1 expansion\n";
  os << "complex,n,coeff,variant,lambda_num,lambda_den,witness_support,algo,"
        "ms\n";
  for (auto& rep : reps) {
    std::string num = "inf", den = "1";
    if (rep.lambda) {
      num = std::to_string(rep.lambda->numerator());
      den = std::to_string(rep.lambda->denominator());
    }
    os << rep.complex_name << ',' << rep.degree << ',' << rep.group_name
       << ',' << variant_name(rep.variant) << ',' << num << ',' << den << ','
       << detail::csv_support(rep.witness) << ',' << rep.algorithm << ','
       << detail::csv_ms(rep.runtime_ms) << '\n';
  }
  return os.str();
}

// ---- metric ---------------------------------------------------------------

// unordered pairs, one per line, lexicographic — the plain-text exchange
// format for the cell adjacency graph
inline std::string edge_list_text(const CellGraph& g) {
  std::ostringstream os;
  for (auto& [a, b] : g.edges()) os << a << ' ' << b << '\n';
  return os.str();
}

inline Json components_to_json(const std::vector<std::vector<int>>& parts) {
  Json j = Json::array();
  for (auto& part : parts) j.push_back(part);
  return j;
}

// ---- covers ---------------------------------------------------------------

inline Json cover_to_json(const CoveringMap& cov) {
  Json j;
  j["base"] = cov.base->name();
  j["fiber"] = cov.fiber;
  j["total"] = complex_to_json(*cov.total);
  return j;
}

inline Json lift_report_to_json(const LiftReport& rep) {
  Json j;
  j["dstar_norm"] = rep.dstar_norm;
  j["succeeded"] = rep.succeeded;
  Json attempts = Json::array();
  for (auto& a : rep.attempts) {
    Json row;
    row["level"] = a.level;
    row["has_lambda"] = a.has_lambda;
    row["radius"] = a.radius;
    row["injective"] = a.injective;
    attempts.push_back(std::move(row));
  }
  j["attempts"] = std::move(attempts);
  if (!rep.succeeded) return j;
  j["level"] = rep.level;
  j["radius"] = rep.radius;
  j["lambda"] = rational_to_json(rep.lambda_used);
  j["dist_down"] = rep.dist_down;
  j["dist_up"] = rep.dist_up;
  if (rep.projected) j["projected"] = cochain_to_json(*rep.projected);
  if (rep.nearest_down) j["nearest_down"] = cochain_to_json(*rep.nearest_down);
  if (rep.lifted) j["lifted"] = cochain_to_json(*rep.lifted);
  return j;
}

// ---- duality ----------------------------------------------------------------

inline Json dual_to_json(const DualStructure& ds) {
  Json j;
  j["primal"] = ds.primal->name();
  j["dim"] = ds.n;
  j["dual"] = complex_to_json(*ds.dual);
  Json table = Json::array();
  for (int k = 0; k <= ds.n; ++k) {
    Json level;
    level["primal_degree"] = k;
    level["dual_degree"] = ds.n - k;
    Json pairs = Json::array();
    for (int c = 0; c < ds.primal->cells(k); ++c)
      pairs.push_back(Json::array({c, ds.pd_index(k, c)}));
    level["pairs"] = std::move(pairs);
    table.push_back(std::move(level));
  }
  j["bijection"] = std::move(table);
  return j;
}

// ---- fillings ---------------------------------------------------------------

inline Json min_filling_to_json(const MinFilling& mf) {
  Json j;
  j["norm"] = mf.norm;
  j["exact"] = mf.exact;
  j["method"] = mf.method;
  j["filling"] = cochain_to_json(mf.q);
  return j;
}

inline Json expander_cert_to_json(const ExpanderCertificate& cert) {
  Json j;
  j["lambda"] = rational_to_json(cert.lambda);
  j["p_norm"] = cert.p_norm;
  j["q_norm"] = cert.q_norm;
  j["r_norm"] = cert.r_norm;
  j["c_norm"] = cert.c_norm;
  j["z_norm"] = cert.z_norm;
  j["cocycle_distance"] = cert.cocycle_distance;
  j["exact"] = cert.exact;
  j["filling"] = cochain_to_json(cert.q);
  return j;
}

inline Json dehn_to_json(const DehnProfile& prof) {
  Json j;
  j["kappa_hat"] = ext_rational_to_json(prof.kappa_hat);
  j["all_exact"] = prof.all_exact;
  Json records = Json::array();
  for (std::size_t i = 0; i < prof.records.size(); ++i) {
    auto& rec = prof.records[i];
    Json row;
    row["cycle_id"] = i;
    row["p_norm"] = rec.p_norm;
    row["q_norm"] = rec.q_norm;
    row["exact"] = rec.exact;
    records.push_back(std::move(row));
  }
  j["records"] = std::move(records);
  return j;
}

inline std::string dehn_csv(const DehnProfile& prof) {
  std::ostringstream os;
  os << "# cobex-csv v1 dehn\n";
  os << "cycle_id,p_norm,q_norm,exact,ratio\n";
  for (std::size_t i = 0; i < prof.records.size(); ++i) {
    auto& rec = prof.records[i];
    os << i << ',' << rec.p_norm << ',' << rec.q_norm << ','
       << (rec.exact ? 1 : 0) << ',';
    if (rec.p_norm > 0)
      os << to_string(
          Rational(std::int64_t(rec.q_norm), std::int64_t(rec.p_norm)));
    os << '\n';
  }
  return os.str();
}

inline Json witness_to_json(const ZeroDimWitness& w) {
  Json j;
  j["level"] = w.level;
  j["u"] = w.u;
  j["v"] = w.v;
  j["distance"] = w.distance;
  j["p"] = cochain_to_json(w.p);
  j["q"] = cochain_to_json(w.q);
  j["filling_norm"] = w.q.norm();
  j["exact"] = w.exact;
  return j;
}

}  // namespace cobex
