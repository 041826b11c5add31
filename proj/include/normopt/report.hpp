#pragma once

#include <string>

#include <json.hpp>

#include "normopt/attainment.hpp"
#include "normopt/lineability.hpp"
#include "normopt/norm_solver.hpp"
#include "normopt/operators.hpp"

namespace normopt {

/// Report pieces are ordered_json so a fixed seed and fixed inputs give a
/// byte-identical document; the timestamp is the one field golden
/// comparisons strip.
using Json = nlohmann::ordered_json;

Json seqvec_to_json(const SeqVec& v);
Json estimate_to_json(const NormEstimate& e);
Json trace_to_json(const MaximizingTrace& t);
Json attainment_to_json(const AttainmentReport& r);
Json family_to_json(const FamilyReport& r);
Json solver_config_to_json(const SolverConfig& cfg);

/// Envelope: {command, timestamp, seed, inputs, results}.
Json make_run_report(const std::string& command, const OperatorSpec* spec,
                     const SolverConfig& cfg, Json results);

/// Trace rows as plot-ready CSV: section, value, and the top-k certificate
/// coordinates as index/value column pairs.
std::string trace_to_csv(const MaximizingTrace& t, int top_k = 4);

}  // namespace normopt
