#include "normopt/spec_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace normopt {

namespace {

using nlohmann::json;

Exponent exponent_field(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) {
    if (fallback <= 0) throw SpecParseError(std::string("missing ") + key);
    return Exponent(fallback);
  }
  if (!j.at(key).is_number()) {
    throw SpecParseError(std::string("field ") + key + " must be a number");
  }
  double v = j.at(key).get<double>();
  try {
    return Exponent(v);
  } catch (const std::invalid_argument& e) {
    throw SpecParseError(std::string(key) + ": " + e.what());
  }
}

Partition partition_field(const json& params) {
  std::string rule = params.value("partition", "dyadic");
  if (rule != "dyadic") {
    throw SpecParseError("unknown partition rule: " + rule);
  }
  return Partition::dyadic();
}

OperatorSpec parse(const json& j, double fallback_p, double fallback_q) {
  if (!j.is_object()) throw SpecParseError("operator spec must be an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw SpecParseError("operator spec needs a string 'kind'");
  }
  std::string kind = j.at("kind").get<std::string>();
  Exponent p = exponent_field(j, "p", fallback_p);
  Exponent q = exponent_field(j, "q", fallback_q);
  json params = j.value("params", json::object());
  if (!params.is_object()) throw SpecParseError("'params' must be an object");

  if (kind == "Diagonal") {
    std::string rule = params.value("rule", "");
    if (rule == "novo1") {
      return OperatorSpec::diagonal(DiagonalRule::Novo1, p, q);
    }
    if (rule == "reciprocal") {
      return OperatorSpec::diagonal(DiagonalRule::Reciprocal, p, q);
    }
    if (rule == "explicit") {
      if (!params.contains("entries") || !params.at("entries").is_array()) {
        throw SpecParseError("explicit diagonal needs an 'entries' array");
      }
      std::vector<double> entries;
      for (const auto& e : params.at("entries")) {
        if (!e.is_number()) throw SpecParseError("entries must be numbers");
        entries.push_back(e.get<double>());
      }
      return OperatorSpec::diagonal(DiagonalRule::Explicit, p, q,
                                    std::move(entries));
    }
    throw SpecParseError("unknown diagonal rule: '" + rule + "'");
  }
  if (kind == "DenseMatrix") {
    if (!params.contains("rows") || !params.at("rows").is_array()) {
      throw SpecParseError("DenseMatrix needs a 'rows' array of arrays");
    }
    std::vector<std::vector<double>> rows;
    for (const auto& r : params.at("rows")) {
      if (!r.is_array()) throw SpecParseError("matrix rows must be arrays");
      std::vector<double> row;
      for (const auto& e : r) {
        if (!e.is_number()) throw SpecParseError("entries must be numbers");
        row.push_back(e.get<double>());
      }
      rows.push_back(std::move(row));
    }
    try {
      return OperatorSpec::dense(DenseMatrix(rows), p, q);
    } catch (const std::invalid_argument& e) {
      throw SpecParseError(e.what());
    }
  }
  if (kind == "Interleaved") {
    if (!params.contains("base")) throw SpecParseError("missing 'base' spec");
    if (!params.contains("k") || !params.at("k").is_number_integer()) {
      throw SpecParseError("Interleaved needs an integer 'k'");
    }
    OperatorSpec base = parse(params.at("base"), p.value(), q.value());
    std::int64_t k = params.at("k").get<std::int64_t>();
    if (k < 1) throw SpecParseError("'k' must be >= 1");
    return OperatorSpec::interleaved(std::move(base),
                                     static_cast<std::uint64_t>(k),
                                     partition_field(params));
  }
  if (kind == "DisjointSum") {
    if (!params.contains("base")) throw SpecParseError("missing 'base' spec");
    if (!params.contains("terms") || !params.at("terms").is_array()) {
      throw SpecParseError("DisjointSum needs a 'terms' array");
    }
    OperatorSpec base = parse(params.at("base"), p.value(), q.value());
    std::vector<SumTerm> terms;
    for (const auto& t : params.at("terms")) {
      if (!t.is_object() || !t.contains("coeff") || !t.contains("k")) {
        throw SpecParseError("terms must be {coeff, k} objects");
      }
      SumTerm term;
      term.coeff = t.at("coeff").get<double>();
      std::int64_t k = t.at("k").get<std::int64_t>();
      if (k < 1) throw SpecParseError("'k' must be >= 1");
      term.block = static_cast<std::uint64_t>(k);
      terms.push_back(term);
    }
    try {
      return OperatorSpec::disjoint_sum(std::move(base), std::move(terms),
                                        partition_field(params));
    } catch (const std::invalid_argument& e) {
      throw SpecParseError(e.what());
    }
  }
  throw SpecParseError("unknown operator kind: '" + kind + "'");
}

}  // namespace

OperatorSpec spec_from_json(const nlohmann::json& j) { return parse(j, 0, 0); }

nlohmann::ordered_json spec_to_json(const OperatorSpec& T) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  switch (T.kind()) {
    case OpKind::Diagonal:
      j["kind"] = "Diagonal";
      switch (T.diag_rule()) {
        case DiagonalRule::Novo1:
          params["rule"] = "novo1";
          break;
        case DiagonalRule::Reciprocal:
          params["rule"] = "reciprocal";
          break;
        case DiagonalRule::Explicit:
          params["rule"] = "explicit";
          params["entries"] = T.explicit_entries();
          break;
      }
      break;
    case OpKind::DenseMatrix: {
      j["kind"] = "DenseMatrix";
      const DenseMatrix& m = T.matrix();
      auto rows = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < m.rows; ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m.at(i, c));
        rows.push_back(std::move(row));
      }
      params["rows"] = std::move(rows);
      break;
    }
    case OpKind::Interleaved:
      j["kind"] = "Interleaved";
      params["base"] = spec_to_json(T.base());
      params["k"] = T.block_index();
      params["partition"] = T.partition().rule();
      break;
    case OpKind::DisjointSum: {
      j["kind"] = "DisjointSum";
      params["base"] = spec_to_json(T.base());
      auto terms = nlohmann::ordered_json::array();
      for (const auto& t : T.terms()) {
        terms.push_back({{"coeff", t.coeff}, {"k", t.block}});
      }
      params["terms"] = std::move(terms);
      params["partition"] = T.partition().rule();
      break;
    }
  }
  j["params"] = std::move(params);
  j["p"] = T.source_p().value();
  j["q"] = T.target_q().value();
  return j;
}

OperatorSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open spec file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SpecParseError("invalid JSON in " + path + ": " + e.what());
  }
  return spec_from_json(j);
}

std::string spec_digest(const OperatorSpec& T) {
  std::string s = spec_to_json(T).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace normopt
