#include "psched/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace psched {

namespace {

using ordered_json = nlohmann::ordered_json;

Rational rational_field(const nlohmann::json& value, const std::string& where) {
  if (value.is_number_integer()) {
    return Rational(value.get<long>());
  }
  if (value.is_string()) {
    try {
      return Rational::parse(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InstanceError(where + ": " + e.what());
    }
  }
  throw InstanceError(where + ": expected integer or \"a/b\" string");
}

JobId job_index(const nlohmann::json& value, const std::string& where) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    throw InstanceError(where + ": expected nonnegative job index");
  }
  return value.get<JobId>();
}

std::string decimal12(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", r.to_double());
  return buf;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InstanceError("document: expected object");

  if (!doc.contains("machines")) throw InstanceError("machines: missing");
  const auto& m = doc["machines"];
  if (!m.is_number_integer() || m.get<long long>() < 1) {
    throw InstanceError("machines: must be an integer >= 1");
  }

  if (!doc.contains("jobs") || !doc["jobs"].is_array()) throw InstanceError("jobs: expected array");
  std::vector<Job> jobs;
  const auto& jobs_json = doc["jobs"];
  for (std::size_t j = 0; j < jobs_json.size(); ++j) {
    const std::string where = "jobs[" + std::to_string(j) + "]";
    const auto& item = jobs_json[j];
    if (!item.is_object() || !item.contains("p") || !item.contains("w")) {
      throw InstanceError(where + ": expected object with \"p\" and \"w\"");
    }
    jobs.push_back({rational_field(item["p"], where + ".p"), rational_field(item["w"], where + ".w")});
  }

  std::vector<Precedence> edges;
  if (doc.contains("precedences")) {
    const auto& prec = doc["precedences"];
    if (!prec.is_array()) throw InstanceError("precedences: expected array");
    for (std::size_t e = 0; e < prec.size(); ++e) {
      const std::string where = "precedences[" + std::to_string(e) + "]";
      if (!prec[e].is_array() || prec[e].size() != 2) throw InstanceError(where + ": expected [j,k]");
      edges.emplace_back(job_index(prec[e][0], where), job_index(prec[e][1], where));
    }
  }
  return Instance(m.get<std::size_t>(), std::move(jobs), std::move(edges));
}

std::string serialize_instance(const Instance& inst) {
  ordered_json doc;
  doc["machines"] = inst.machines();
  doc["jobs"] = ordered_json::array();
  for (const auto& job : inst.jobs()) {
    ordered_json item;
    item["p"] = job.processing_time.str();
    item["w"] = job.weight.str();
    doc["jobs"].push_back(std::move(item));
  }
  doc["precedences"] = ordered_json::array();
  for (const auto& [a, b] : inst.precedences()) doc["precedences"].push_back({a, b});
  return doc.dump(2) + "\n";
}

std::string serialize_schedule(const MachineSchedule& schedule) {
  ordered_json doc;
  doc["objective"] = schedule.objective.str();
  doc["completions"] = ordered_json::array();
  for (const auto& c : schedule.completions) doc["completions"].push_back(c.str());
  doc["segments"] = ordered_json::array();
  for (const auto& seg : schedule.segments) {
    ordered_json item;
    item["machine"] = seg.machine;
    item["job"] = seg.job;
    item["start"] = seg.start.str();
    item["end"] = seg.end.str();
    doc["segments"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::string serialize_virtual(const VirtualSchedule& schedule) {
  ordered_json doc;
  doc["objective"] = schedule.objective.str();
  doc["completions"] = ordered_json::array();
  for (const auto& c : schedule.completions) doc["completions"].push_back(c.str());
  doc["completion_order"] = schedule.completion_order;
  doc["events"] = ordered_json::array();
  for (const auto& ev : schedule.events) {
    ordered_json item;
    item["start"] = ev.start.str();
    item["end"] = ev.end.str();
    item["completed"] = ev.completed;
    item["rates"] = ordered_json::array();
    for (const auto& r : ev.rates.rates) {
      ordered_json e;
      e["job"] = r.job;
      e["rate"] = r.rate.str();
      item["rates"].push_back(std::move(e));
    }
    item["elapsed"] = ordered_json::array();
    for (const auto& y : ev.elapsed_at_end) item["elapsed"].push_back(y.str());
    doc["events"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::string gantt_csv(const MachineSchedule& schedule) {
  std::ostringstream out;
  out << "machine,job,start,end\n";
  for (const auto& seg : schedule.segments) {
    out << seg.machine << ',' << seg.job << ',' << decimal12(seg.start) << ','
        << decimal12(seg.end) << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace psched
