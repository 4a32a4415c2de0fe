#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "rdisc/factorize.hpp"
#include "rdisc/textio.hpp"

namespace rdisc {

using Json = nlohmann::ordered_json;

/// Machine-readable form of a factorization report:
/// {n, k, d, c: {num, den}, M, T, qhd: {...}, checks: {...}, timings_ms: {...}}
inline Json theorem_report_to_json(const FactorizationReport& report,
                                   const std::vector<std::string>* names = nullptr) {
  Json j;
  j["n"] = report.n;
  j["k"] = report.k;
  j["d"] = report.d;
  j["c"] = Json{{"num", report.c.get_num().get_str()},
                {"den", report.c.get_den().get_str()}};
  j["M"] = to_canonical_string(report.M, names);
  j["T"] = to_canonical_string(report.T, names);
  j["qhd"] = Json{{"D", report.qhd_D_observed},
                  {"M", report.qhd_M_observed},
                  {"T", report.qhd_T_observed}};
  Json checks = Json::object();
  for (const auto& [name, ok] : report.checks) checks[name] = ok;
  j["checks"] = checks;
  Json witnesses = Json::object();
  for (const auto& [name, w] : report.witnesses) witnesses[name] = w;
  if (!witnesses.empty()) j["witnesses"] = witnesses;
  Json timings = Json::object();
  for (const auto& [name, ms] : report.timings_ms) timings[name] = ms;
  j["timings_ms"] = timings;
  return j;
}

/// Structural validation of the schema above; returns false with a reason
/// instead of throwing so tests can assert cleanly.
inline bool validate_theorem_report_json(const Json& j, std::string* reason = nullptr) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  for (const char* field : {"n", "k", "d", "c", "M", "T", "qhd", "checks", "timings_ms"})
    if (!j.contains(field)) return fail(std::string("missing field ") + field);
  if (!j["n"].is_number_integer() || !j["k"].is_number_integer() ||
      !j["d"].is_number_integer())
    return fail("n, k, d must be integers");
  if (!j["c"].is_object() || !j["c"].contains("num") || !j["c"].contains("den") ||
      !j["c"]["num"].is_string() || !j["c"]["den"].is_string())
    return fail("c must be {num: string, den: string}");
  if (!j["M"].is_string() || !j["T"].is_string()) return fail("M, T must be strings");
  if (!j["qhd"].is_object()) return fail("qhd must be an object");
  if (!j["checks"].is_object() || j["checks"].empty())
    return fail("checks must be a non-empty object");
  for (const auto& [name, value] : j["checks"].items())
    if (!value.is_boolean()) return fail("check " + name + " must be boolean");
  if (!j["timings_ms"].is_object()) return fail("timings_ms must be an object");
  for (const auto& [name, value] : j["timings_ms"].items())
    if (!value.is_number()) return fail("timing " + name + " must be a number");
  return true;
}

inline std::string theorem_report_to_text(
    const FactorizationReport& report,
    const std::vector<std::string>* names = nullptr) {
  std::string out;
  out += "theorem n=" + std::to_string(report.n) + " k=" + std::to_string(report.k) +
         "\n";
  out += "  d = " + std::to_string(report.d) + "\n";
  out += "  c = " + to_string(report.c) + "\n";
  out += "  M = " + to_canonical_string(report.M, names) + "\n";
  out += "  T = " + to_canonical_string(report.T, names) + "\n";
  out += "  qhd: D=" + std::to_string(report.qhd_D_observed) +
         " M=" + std::to_string(report.qhd_M_observed) +
         " T=" + std::to_string(report.qhd_T_observed) + "\n";
  for (const auto& [name, ok] : report.checks) {
    out += "  check " + name + ": " + (ok ? "pass" : "FAIL");
    auto w = report.witnesses.find(name);
    if (w != report.witnesses.end()) out += " (" + w->second + ")";
    out += "\n";
  }
  return out;
}

inline Json lemma_report_to_json(const LemmaReport& report) {
  Json j;
  j["lemma"] = report.lemma;
  j["n"] = report.n;
  j["pass"] = report.all_passed();
  Json cases = Json::array();
  for (const auto& c : report.cases) {
    Json jc;
    jc["id"] = c.id;
    jc["pass"] = c.pass;
    if (!c.constants.empty()) {
      Json consts = Json::object();
      for (const auto& [name, value] : c.constants)
        consts[name] = Json{{"num", value.get_num().get_str()},
                            {"den", value.get_den().get_str()}};
      jc["constants"] = consts;
    }
    if (!c.details.empty()) jc["details"] = c.details;
    cases.push_back(jc);
  }
  j["cases"] = cases;
  return j;
}

inline std::string lemma_report_to_text(const LemmaReport& report) {
  std::string out = "lemma " + report.lemma + " n=" + std::to_string(report.n) + "\n";
  for (const auto& c : report.cases) {
    out += "  " + c.id + ": " + (c.pass ? "pass" : "FAIL");
    for (const auto& [name, value] : c.constants)
      out += " " + name + "=" + to_string(value);
    if (!c.details.empty()) out += " [" + c.details + "]";
    out += "\n";
  }
  return out;
}

}  // namespace rdisc
