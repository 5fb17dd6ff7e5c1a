#include "robusthalf/run_record.hpp"

#include <json.hpp>

#include <fstream>

namespace robusthalf {

using nlohmann::json;

namespace {

json value_to_json(const RunRecord::Value& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

}  // namespace

namespace {

json record_to_json(const RunRecord& r) {
  json j;
  j["command"] = r.command;
  j["seed"] = r.seed;
  json cfg = json::object();
  for (const auto& [k, v] : r.config) cfg[k] = value_to_json(v);
  j["config"] = cfg;
  json met = json::object();
  for (const auto& [k, v] : r.metrics) met[k] = value_to_json(v);
  j["metrics"] = met;
  json art = json::object();
  for (const auto& [k, v] : r.artifacts) art[k] = v;
  j["artifacts"] = art;
  return j;
}

}  // namespace

std::string RunRecord::to_json_text() const { return record_to_json(*this).dump(2); }

std::string RunRecord::to_json_line() const { return record_to_json(*this).dump(); }

void RunRecord::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write run record: " + path.string());
  out << to_json_text() << "\n";
}

}  // namespace robusthalf
