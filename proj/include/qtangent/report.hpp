#pragma once

#include "qtangent/classify.hpp"
#include "qtangent/uq_sl2.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace qtangent {

using ojson = nlohmann::ordered_json;

inline ojson to_json(const std::vector<CheckResult>& checks) {
  ojson v = ojson::object();
  ojson counter = ojson::object();
  for (const auto& c : checks) {
    v[c.name] = c.passed ? "pass" : "fail";
    if (!c.passed) counter[c.name] = c.counterexample;
  }
  if (!counter.empty()) v["counterexample"] = counter;
  return v;
}

inline ojson to_json(const CalculusRecord& r) {
  ojson j;
  j["kind"] = r.kind;
  j["dimension"] = r.dimension;
  if (r.class_representative) {
    j["class_representative"] = *r.class_representative;
    j["class_size"] = r.class_size;
  }
  if (r.character_index) {
    j["character_index"] = *r.character_index;
    j["character_row"] = r.character_row;
  }
  j["parameter_space"] = r.parameter_space;
  if (r.instantiation) {
    const auto& in = *r.instantiation;
    ojson inst;
    inst["source"] = in.source;
    ojson support = ojson::array();
    for (const auto& t : in.lambda_support) support.push_back({{"element", t.element}, {"coefficient", t.coefficient}});
    inst["lambda_support"] = support;
    inst["tangent_dimension"] = in.tangent_dim;
    inst["rank"] = in.rank;
    inst["coirreducible"] = in.coirreducible;
    if (in.subgroup_generator) {
      inst["subgroup_generator"] = *in.subgroup_generator;
      inst["subgroup_order"] = in.subgroup_order;
      inst["multiplicity"] = in.multiplicity;
    }
    j["instantiation"] = inst;
  }
  if (r.exterior_rank2) j["exterior_rank2"] = *r.exterior_rank2;
  j["verification"] = to_json(r.verification);
  if (r.error) j["error"] = *r.error;
  return j;
}

inline ojson to_json(const ClassificationReport& rep) {
  ojson j;
  j["group"] = rep.group;
  j["order"] = rep.order;
  j["side"] = side_name(rep.side);
  if (rep.side == Side::GroupAlgebra) {
    j["conductor"] = rep.conductor;
    j["cyclotomic_format"] = "c0+c1*z^1+... with z = exp(2 pi i / conductor)";
  }
  ojson calc = ojson::array();
  for (const auto& r : rep.calculi) calc.push_back(to_json(r));
  j["calculi"] = calc;
  j["dimension_sum"] = rep.dimension_sum;
  j["decomposition"] = {{"status", rep.decomposition_ok ? "pass" : "fail"}, {"detail", rep.decomposition_detail}};
  if (!rep.cross_checks.empty()) {
    ojson cc = ojson::array();
    for (const auto& c : rep.cross_checks) cc.push_back({{"check", c.name}, {"status", c.passed ? "pass" : "fail"}, {"detail", c.detail}});
    j["cross_checks"] = cc;
  }
  j["status"] = rep.passed() ? "pass" : "fail";
  return j;
}

/// Classification summary only: one row per calculus.
inline std::string to_csv(const ClassificationReport& rep) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  std::ostringstream out;
  out << "group,side,kind,dimension,parameter_space,representative,rank,exterior_rank2,verification\n";
  for (const auto& r : rep.calculi) {
    std::string repr = r.class_representative ? *r.class_representative
                                              : "chi" + std::to_string(r.character_index.value_or(0));
    out << quote(rep.group) << ',' << side_name(rep.side) << ',' << r.kind << ',' << r.dimension << ','
        << r.parameter_space << ',' << quote(repr) << ','
        << (r.instantiation ? std::to_string(r.instantiation->rank) : std::string("1")) << ','
        << (r.exterior_rank2 ? std::to_string(*r.exterior_rank2) : std::string()) << ','
        << (r.passed() ? "pass" : "fail") << '\n';
  }
  return out.str();
}

inline std::string to_text(const ClassificationReport& rep) {
  std::ostringstream out;
  out << rep.group << " (order " << rep.order << "), " << side_name(rep.side) << " side\n";
  if (rep.side == Side::GroupAlgebra) out << "cyclotomic conductor " << rep.conductor << "\n";
  for (const auto& r : rep.calculi) {
    out << "  " << r.kind << " dim " << r.dimension << " " << r.parameter_space;
    if (r.class_representative) out << " class of " << *r.class_representative << " (size " << r.class_size << ")";
    if (r.character_index) out << " chi" << *r.character_index;
    if (r.instantiation) {
      out << " lambda =";
      for (const auto& t : r.instantiation->lambda_support) out << " " << t.coefficient << "*" << t.element;
      out << " rank " << r.instantiation->rank;
    }
    if (r.exterior_rank2) out << " wedge2 " << *r.exterior_rank2;
    out << (r.passed() ? " [pass]" : " [FAIL]") << "\n";
    for (const auto& c : r.verification)
      if (!c.passed) out << "    " << c.name << ": " << c.counterexample << "\n";
    if (r.error) out << "    error: " << *r.error << "\n";
  }
  out << "  decomposition: " << (rep.decomposition_ok ? "pass" : "FAIL") << " (" << rep.decomposition_detail << ")\n";
  for (const auto& c : rep.cross_checks)
    out << "  " << c.name << ": " << (c.passed ? "pass" : "FAIL") << (c.passed ? "" : " (" + c.detail + ")") << "\n";
  return out.str();
}

inline std::string render(const ClassificationReport& rep, const std::string& format) {
  if (format == "json") return to_json(rep).dump(2) + "\n";
  if (format == "csv") return to_csv(rep);
  if (format == "text") return to_text(rep);
  throw InputError("unknown format '" + format + "' (expected json, csv or text)");
}

inline ojson to_json(const uq::QCheck& c) {
  ojson j;
  j["check"] = c.name;
  j["status"] = c.passed ? "pass" : "fail";
  j["detail"] = c.detail;
  if (c.witness) j["witness"] = {{"indices", c.witness->indices}, {"lhs", c.witness->lhs}, {"rhs", c.witness->rhs}};
  return j;
}

inline ojson qsuite_json(const std::vector<uq::QCheck>& checks, unsigned max_degree) {
  ojson j;
  j["suite"] = "uq_sl2 spin 1/2";
  j["field"] = "Q(s), s^2 = q";
  j["max_degree"] = max_degree;
  ojson arr = ojson::array();
  bool ok = true;
  for (const auto& c : checks) {
    arr.push_back(to_json(c));
    ok = ok && c.passed;
  }
  j["checks"] = arr;
  j["status"] = ok ? "pass" : "fail";
  return j;
}

inline std::string render_qsuite(const std::vector<uq::QCheck>& checks, unsigned max_degree, const std::string& format) {
  if (format == "json") return qsuite_json(checks, max_degree).dump(2) + "\n";
  std::ostringstream out;
  if (format == "csv") {
    out << "check,status,detail\n";
    for (const auto& c : checks) out << c.name << ',' << (c.passed ? "pass" : "fail") << ",\"" << c.detail << "\"\n";
    return out.str();
  }
  if (format == "text") {
    for (const auto& c : checks) {
      out << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (" << c.detail << ")\n";
      if (c.witness) out << "  lhs " << c.witness->lhs << "\n  rhs " << c.witness->rhs << "\n";
    }
    return out.str();
  }
  throw InputError("unknown format '" + format + "' (expected json, csv or text)");
}

} // namespace qtangent
