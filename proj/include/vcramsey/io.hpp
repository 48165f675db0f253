#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "vcramsey/clique_search.hpp"
#include "vcramsey/coloring.hpp"
#include "vcramsey/packing.hpp"
#include "vcramsey/ramsey_small.hpp"
#include "vcramsey/set_system.hpp"

namespace vcramsey {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kLibraryVersion = "0.1.0";

// Set-system text format:
//   n m
//   m member lines, each a bit-string of length n or "s" followed by indices.
// Blank lines and lines starting with '#' are ignored. Labels are not stored.
SetSystem read_set_system_text(std::istream& in);
void write_set_system_text(std::ostream& out, const SetSystem& system);

// Coloring text format:
//   n m
//   C(n,2) colors in row-major upper-triangular order, whitespace separated.
EdgeColoring read_coloring_text(std::istream& in);
void write_coloring_text(std::ostream& out, const EdgeColoring& coloring);

nlohmann::json to_json(const SetSystem& system);
SetSystem set_system_from_json(const nlohmann::json& j);

/// Edge triples [u, v, color] in row-major order.
nlohmann::json to_json(const EdgeColoring& coloring);
EdgeColoring coloring_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CliqueCertificate& certificate);
CliqueCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Packing& packing);
nlohmann::json to_json(const Partition& partition);
Partition partition_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PartitionReport& report);

nlohmann::json to_json(const ExtensionResult& result);
nlohmann::json to_json(const DescentResult& result);
/// Per level sizes and property checks, per step part summaries and the edge-type histogram.
nlohmann::json to_json(const TraceReport& report);
nlohmann::json to_json(const RamseyResult& result);

// File helpers choose JSON when the path ends in ".json", the text format otherwise.
SetSystem load_set_system(const std::string& path);
void save_set_system(const std::string& path, const SetSystem& system);
EdgeColoring load_coloring(const std::string& path);
void save_coloring(const std::string& path, const EdgeColoring& coloring);
nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

}  // namespace vcramsey
