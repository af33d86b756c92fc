#include "ddfl/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ddfl {

namespace {

using ordered_json = nlohmann::ordered_json;

double get_num(const ordered_json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_number())
    throw InstanceError(path + "." + key + ": missing or not a number");
  return j[key].get<double>();
}

}  // namespace

Instance instance_from_json_text(const std::string& text, const std::string& origin) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw InstanceError(origin + ": JSON parse error: " + e.what());
  }

  Instance inst;
  if (!j.contains("facilities") || !j["facilities"].is_array())
    throw InstanceError("facilities: missing or not an array");
  if (!j.contains("customers") || !j["customers"].is_array())
    throw InstanceError("customers: missing or not an array");

  for (std::size_t i = 0; i < j["facilities"].size(); ++i) {
    const auto& jf = j["facilities"][i];
    const std::string path = "facilities[" + std::to_string(i) + "]";
    if (!jf.is_object()) throw InstanceError(path + ": not an object");
    FacilitySpec f;
    f.x = get_num(jf, "x", path);
    f.y = get_num(jf, "y", path);
    if (!jf.contains("zone") || !jf["zone"].is_number_integer())
      throw InstanceError(path + ".zone: missing or not an integer");
    f.zone = jf["zone"].get<int>();
    if (f.zone < 0) throw InstanceError(path + ".zone: negative");
    inst.facilities.push_back(f);
  }

  for (std::size_t c = 0; c < j["customers"].size(); ++c) {
    const auto& jc = j["customers"][c];
    const std::string path = "customers[" + std::to_string(c) + "]";
    if (!jc.is_object()) throw InstanceError(path + ": not an object");
    CustomerSpec cu;
    cu.x = get_num(jc, "x", path);
    cu.y = get_num(jc, "y", path);
    cu.mu = get_num(jc, "mu", path);
    cu.sigma = get_num(jc, "sigma", path);
    if (!jc.contains("zone_rank") || !jc["zone_rank"].is_array())
      throw InstanceError(path + ".zone_rank: missing or not an array");
    for (const auto& v : jc["zone_rank"]) {
      if (!v.is_number_integer()) throw InstanceError(path + ".zone_rank: non-integer entry");
      cu.zone_rank.push_back(v.get<int>());
    }
    inst.customers.push_back(cu);
  }

  auto read_vec = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_array())
      throw InstanceError(std::string(key) + ": missing or not an array");
    Vec v(j[key].size());
    for (std::size_t i = 0; i < j[key].size(); ++i) {
      if (!j[key][i].is_number())
        throw InstanceError(std::string(key) + "[" + std::to_string(i) + "]: not a number");
      v(static_cast<int>(i)) = j[key][i].get<double>();
    }
    return v;
  };
  inst.fixed_cost = read_vec("F");
  inst.capacity = read_vec("C");

  if (!j.contains("R") || !j["R"].is_array()) throw InstanceError("R: missing or not an array");
  const std::size_t ni = j["R"].size();
  const std::size_t nj = ni ? j["R"][0].size() : 0;
  inst.revenue.resize(static_cast<int>(ni), static_cast<int>(nj));
  for (std::size_t i = 0; i < ni; ++i) {
    if (!j["R"][i].is_array() || j["R"][i].size() != nj)
      throw InstanceError("R[" + std::to_string(i) + "]: ragged row");
    for (std::size_t c = 0; c < nj; ++c) {
      if (!j["R"][i][c].is_number())
        throw InstanceError("R[" + std::to_string(i) + "][" + std::to_string(c) +
                            "]: not a number");
      inst.revenue(static_cast<int>(i), static_cast<int>(c)) = j["R"][i][c].get<double>();
    }
  }

  if (!j.contains("demand_type") || !j["demand_type"].is_string())
    throw InstanceError("demand_type: missing or not a string");
  inst.demand_type = demand_type_from_string(j["demand_type"].get<std::string>());

  if (!j.contains("scenarios_per_distribution") ||
      !j["scenarios_per_distribution"].is_number_integer())
    throw InstanceError("scenarios_per_distribution: missing or not an integer");
  inst.scenarios_per_distribution = j["scenarios_per_distribution"].get<int>();

  if (!j.contains("seed") || !j["seed"].is_number_unsigned())
    throw InstanceError("seed: missing or not a nonnegative integer");
  inst.seed = j["seed"].get<std::uint64_t>();

  if (!j.contains("config") || !j["config"].is_number_integer())
    throw InstanceError("config: missing or not an integer");
  inst.config = j["config"].get<int>();

  inst.rebuild_zones();
  inst.validate();
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json_text(buf.str(), path);
}

std::string instance_to_json_text(const Instance& inst) {
  ordered_json j;
  j["facilities"] = ordered_json::array();
  for (const auto& f : inst.facilities)
    j["facilities"].push_back({{"x", f.x}, {"y", f.y}, {"zone", f.zone}});
  j["customers"] = ordered_json::array();
  for (const auto& c : inst.customers)
    j["customers"].push_back(
        {{"x", c.x}, {"y", c.y}, {"mu", c.mu}, {"sigma", c.sigma}, {"zone_rank", c.zone_rank}});
  j["F"] = std::vector<double>(inst.fixed_cost.data(), inst.fixed_cost.data() + inst.fixed_cost.size());
  j["C"] = std::vector<double>(inst.capacity.data(), inst.capacity.data() + inst.capacity.size());
  j["R"] = ordered_json::array();
  for (int i = 0; i < inst.revenue.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < inst.revenue.cols(); ++c) row.push_back(inst.revenue(i, c));
    j["R"].push_back(row);
  }
  j["demand_type"] = to_string(inst.demand_type);
  j["scenarios_per_distribution"] = inst.scenarios_per_distribution;
  j["seed"] = inst.seed;
  j["config"] = inst.config;
  return j.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InstanceError(path + ": cannot open for writing");
  out << instance_to_json_text(inst);
}

}  // namespace ddfl
