#include "normopt/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "normopt/spec_io.hpp"

namespace normopt {

Json seqvec_to_json(const SeqVec& v) {
  Json arr = Json::array();
  for (double c : v.coords()) arr.push_back(c);
  return arr;
}

Json estimate_to_json(const NormEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["certificate"] = seqvec_to_json(e.certificate);
  j["method"] = method_name(e.method);
  j["iterations"] = e.iterations;
  j["converged"] = e.converged;
  j["section"] = e.section;
  j["min_ascent_step"] = e.min_ascent_step;
  return j;
}

Json trace_to_json(const MaximizingTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json step;
    step["section"] = s.section;
    step["value"] = s.value;
    step["certificate"] = seqvec_to_json(s.certificate);
    steps.push_back(std::move(step));
  }
  Json j;
  j["p"] = t.p.value();
  j["q"] = t.q.value();
  j["steps"] = std::move(steps);
  j["weak_limit_candidate"] = seqvec_to_json(t.weak_limit_candidate);
  return j;
}

Json attainment_to_json(const AttainmentReport& r) {
  Json j;
  j["verdict"] = verdict_name(r.verdict);
  j["norm_value"] = r.norm_value;
  if (r.attainer) {
    j["attainer"] = seqvec_to_json(*r.attainer);
  } else {
    j["attainer"] = nullptr;
  }
  j["weak_null_score"] = r.weak_null_score;
  j["splitting_residuals"] = r.splitting_residuals;
  j["dichotomy_margin"] = r.dichotomy_margin;
  return j;
}

Json family_to_json(const FamilyReport& r) {
  Json j;
  j["family_size"] = r.family_size;
  j["base_op"] = r.base_op ? spec_to_json(*r.base_op) : Json(nullptr);
  j["combos_tested"] = r.combos_tested.size();
  j["all_attain_at_x0"] = r.all_attain_at_x0;
  j["none_attain"] = r.none_attain;
  j["additivity_defect"] = r.additivity_defect;
  j["independence_ok"] = r.independence_ok;
  j["norm_match_defect"] = r.norm_match_defect;
  j["min_strict_gap"] = r.min_strict_gap;
  j["near_attainment_shortfall"] = r.near_attainment_shortfall;
  return j;
}

Json solver_config_to_json(const SolverConfig& cfg) {
  Json j;
  j["tol"] = cfg.tol;
  j["max_iter"] = cfg.max_iter;
  j["restarts"] = cfg.restarts;
  j["seed"] = cfg.seed;
  j["ladder"] = cfg.ladder;
  return j;
}

namespace {

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

}  // namespace

Json make_run_report(const std::string& command, const OperatorSpec* spec,
                     const SolverConfig& cfg, Json results) {
  Json j;
  j["command"] = command;
  j["timestamp"] = iso_timestamp();
  j["seed"] = cfg.seed;
  Json inputs;
  if (spec) {
    inputs["spec_digest"] = spec_digest(*spec);
    inputs["spec"] = spec_to_json(*spec);
  }
  inputs["config"] = solver_config_to_json(cfg);
  j["inputs"] = std::move(inputs);
  j["results"] = std::move(results);
  return j;
}

std::string trace_to_csv(const MaximizingTrace& t, int top_k) {
  std::ostringstream out;
  out.precision(17);
  out << "section,value";
  for (int k = 1; k <= top_k; ++k) out << ",coord_index_" << k << ",coord_" << k;
  out << "\n";
  for (const auto& s : t.steps) {
    out << s.section << "," << s.value;
    // top-k coordinates by magnitude, ties by index
    std::vector<std::pair<double, std::size_t>> mags;
    for (std::size_t i = 1; i <= s.certificate.size(); ++i) {
      double v = s.certificate.coord(i);
      if (v != 0.0) mags.push_back({-std::fabs(v), i});
    }
    std::sort(mags.begin(), mags.end());
    for (int k = 0; k < top_k; ++k) {
      if (static_cast<std::size_t>(k) < mags.size()) {
        out << "," << mags[k].second << ","
            << s.certificate.coord(mags[k].second);
      } else {
        out << ",0,0";
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace normopt
