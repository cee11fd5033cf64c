#include "qaoa/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qaoa {

using nlohmann::json;

std::string instance_to_json(const CsppInstance& instance) {
  json edges = json::array();
  for (const Edge& e : instance.edges()) {
    edges.push_back({{"u", e.u},
                     {"v", e.v},
                     {"cost", e.cost},
                     {"resource", e.resource}});
  }
  const json j = {{"num_nodes", instance.num_nodes()},
                  {"edges", edges},
                  {"source", instance.source()},
                  {"target", instance.target()},
                  {"resource_limit", instance.resource_limit()},
                  {"seed", instance.seed()}};
  return j.dump(2) + "\n";
}

CsppInstance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("instance parse error: ") + e.what());
  }
  try {
    std::vector<Edge> edges;
    for (const auto& je : j.at("edges")) {
      Edge e;
      e.u = je.at("u").get<int>();
      e.v = je.at("v").get<int>();
      e.cost = je.at("cost").get<double>();
      e.resource = je.at("resource").get<double>();
      edges.push_back(e);
    }
    // The CsppInstance constructor enforces canonical edge order and all
    // other structural invariants; unsorted files are rejected there.
    return CsppInstance(j.at("num_nodes").get<int>(), std::move(edges),
                        j.at("source").get<int>(), j.at("target").get<int>(),
                        j.at("resource_limit").get<double>(),
                        j.value("seed", std::uint64_t{0}));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("instance field error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid instance file: ") +
                             e.what());
  }
}

void save_instance(const CsppInstance& instance,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_json(instance);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

CsppInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return instance_from_json(ss.str());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace qaoa
