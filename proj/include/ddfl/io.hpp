#pragma once

#include <string>

#include "ddfl/types.hpp"

namespace ddfl {

// JSON schema (field names are part of the file contract):
//   {"facilities":[{"x":..,"y":..,"zone":..}],
//    "customers":[{"x":..,"y":..,"mu":..,"sigma":..,"zone_rank":[..]}],
//    "F":[..], "C":[..], "R":[[..]],
//    "demand_type":"A|B|C|D", "scenarios_per_distribution":n,
//    "seed":n, "config":n}
// load validates and returns a ready instance; save writes the same layout
// with stable key order so save(load(f)) reproduces f up to whitespace.
Instance load_instance(const std::string& path);
Instance instance_from_json_text(const std::string& text, const std::string& origin = "<string>");
void save_instance(const Instance& inst, const std::string& path);
std::string instance_to_json_text(const Instance& inst);

}  // namespace ddfl
