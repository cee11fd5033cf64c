#pragma once

#include <filesystem>
#include <string>

#include "qaoa/cspp.hpp"

namespace qaoa {

/// JSON text form of an instance: keys num_nodes, edges (array of
/// {u, v, cost, resource} in canonical order), source, target,
/// resource_limit, seed. Deterministic byte output for a given instance.
std::string instance_to_json(const CsppInstance& instance);

/// Parses and validates; rejects files whose edge array is not in canonical
/// order (throws std::runtime_error with context).
CsppInstance instance_from_json(const std::string& text);

void save_instance(const CsppInstance& instance,
                   const std::filesystem::path& path);
CsppInstance load_instance(const std::filesystem::path& path);

}  // namespace qaoa
