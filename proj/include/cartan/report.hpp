#pragma once

// Check records and report rendering. JSON output is canonical: fixed key
// order, no timing data, so identical (config, seed) runs emit identical
// bytes. Wall-clock times are kept on the records for the text rendering
// only.

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartan/rational.hpp"

namespace cartan {

using Json = nlohmann::ordered_json;

enum class Verdict { kPass, kFail, kInconclusive };

inline const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    default: return "inconclusive";
  }
}

inline Verdict verdict_from(const std::string& s) {
  if (s == "pass") return Verdict::kPass;
  if (s == "fail") return Verdict::kFail;
  if (s == "inconclusive") return Verdict::kInconclusive;
  throw Error("unknown verdict string: " + s);
}

struct CheckRecord {
  std::string id;
  Verdict verdict = Verdict::kInconclusive;
  std::int64_t ball = 0;
  Json witnesses = Json::array();  // replayable exact data for every FAIL
  Json values = Json::object();    // exact values as strings
  std::string note;
  double wall_ms = 0.0;  // text rendering only, never serialized to JSON
};

struct Report {
  std::string command;
  std::string config_name;
  std::string subgroup;  // empty when the command is not subgroup-scoped
  std::int64_t ball_radius = 0;
  std::int64_t k_max = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  Verdict overall() const {
    Verdict v = Verdict::kPass;
    for (const auto& c : checks) {
      if (c.verdict == Verdict::kFail) return Verdict::kFail;
      if (c.verdict == Verdict::kInconclusive) v = Verdict::kInconclusive;
    }
    return v;
  }
};

enum class ReportFormat { kJson, kText };

inline Json report_json(const Report& r) {
  Json out;
  out["command"] = r.command;
  out["config"] = r.config_name;
  out["subgroup"] = r.subgroup;
  out["ball_radius"] = r.ball_radius;
  out["k_max"] = r.k_max;
  out["samples"] = r.samples;
  out["seed"] = r.seed;
  out["verdict"] = verdict_str(r.overall());
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json jc;
    jc["id"] = c.id;
    jc["verdict"] = verdict_str(c.verdict);
    jc["ball"] = c.ball;
    jc["witnesses"] = c.witnesses;
    jc["values"] = c.values;
    jc["note"] = c.note;
    checks.push_back(std::move(jc));
  }
  out["checks"] = std::move(checks);
  return out;
}

inline std::string emit_report(const Report& r, ReportFormat fmt) {
  if (fmt == ReportFormat::kJson) return report_json(r).dump(2) + "\n";
  std::string out;
  out += r.command;
  out += " config=" + r.config_name;
  if (!r.subgroup.empty()) out += " subgroup=" + r.subgroup;
  out += " B=" + std::to_string(r.ball_radius) + " kmax=" + std::to_string(r.k_max) +
         " samples=" + std::to_string(r.samples) + " seed=" + std::to_string(r.seed) + "\n";
  for (const auto& c : r.checks) {
    std::string v = verdict_str(c.verdict);
    for (auto& ch : v) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    out += "[" + v + "] " + c.id + " (B=" + std::to_string(c.ball) + ", " +
           std::to_string(static_cast<long long>(c.wall_ms)) + " ms)";
    if (!c.note.empty()) out += " " + c.note;
    if (!c.witnesses.empty()) out += " witnesses=" + c.witnesses.dump();
    if (!c.values.empty()) out += " values=" + c.values.dump();
    out += "\n";
  }
  std::string v = verdict_str(r.overall());
  for (auto& ch : v) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  out += "overall: " + v + "\n";
  return out;
}

/// Inverse of the JSON rendering, for round-trip checks and replay tooling.
inline Report parse_report(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("report parse: ") + e.what());
  }
  Report r;
  r.command = j.at("command").get<std::string>();
  r.config_name = j.at("config").get<std::string>();
  r.subgroup = j.at("subgroup").get<std::string>();
  r.ball_radius = j.at("ball_radius").get<std::int64_t>();
  r.k_max = j.at("k_max").get<std::int64_t>();
  r.samples = j.at("samples").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& jc : j.at("checks")) {
    CheckRecord c;
    c.id = jc.at("id").get<std::string>();
    c.verdict = verdict_from(jc.at("verdict").get<std::string>());
    c.ball = jc.at("ball").get<std::int64_t>();
    c.witnesses = jc.at("witnesses");
    c.values = jc.at("values");
    c.note = jc.at("note").get<std::string>();
    r.checks.push_back(std::move(c));
  }
  return r;
}

/// Scoped stopwatch for filling CheckRecord::wall_ms.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace cartan
