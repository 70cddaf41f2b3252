// Copyright 2026 The dirac-subdiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirac_subdiv/graph.hpp"
#include "dirac_subdiv/hampath.hpp"

namespace dirac {

/// An H-subdivision inside a host: where each pattern vertex sits and which
/// host path replaces each pattern edge.  edge_paths is keyed by (i, j) with
/// i < j and runs from branch_map[i] to branch_map[j].
struct SubdivisionCertificate {
  Graph pattern;
  std::size_t host_vertices = 0;
  std::vector<Vertex> branch_map;
  std::map<Edge, PathRecord> edge_paths;

  friend bool operator==(const SubdivisionCertificate&, const SubdivisionCertificate&) = default;
};

inline constexpr const char* kCertificateFormat = "dirac-subdiv-certificate";
inline constexpr int kCertificateVersion = 1;

// Field order is fixed (ordered_json), so identical certificates serialize to
// identical bytes.
inline nlohmann::ordered_json to_json(const SubdivisionCertificate& cert) {
  nlohmann::ordered_json doc;
  doc["format"] = kCertificateFormat;
  doc["version"] = kCertificateVersion;
  doc["host_vertices"] = cert.host_vertices;
  doc["pattern"]["vertices"] = cert.pattern.vertex_count();
  auto edges = nlohmann::ordered_json::array();
  for (auto [u, v] : cert.pattern.edges()) edges.push_back({u, v});
  doc["pattern"]["edges"] = std::move(edges);
  doc["branch_map"] = cert.branch_map;
  auto paths = nlohmann::ordered_json::array();
  for (const auto& [edge, path] : cert.edge_paths) {
    nlohmann::ordered_json entry;
    entry["edge"] = {edge.first, edge.second};
    entry["path"] = path.vertices;
    paths.push_back(std::move(entry));
  }
  doc["edge_paths"] = std::move(paths);
  return doc;
}

inline std::string serialize_certificate(const SubdivisionCertificate& cert) {
  return to_json(cert).dump() + "\n";
}

/// Throws std::invalid_argument on anything that is not a well-formed
/// certificate document.  Semantic validity is the verifier's job.
inline SubdivisionCertificate parse_certificate(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("certificate: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kCertificateFormat) {
      throw std::invalid_argument("certificate: unknown format tag");
    }
    if (doc.at("version").get<int>() != kCertificateVersion) {
      throw std::invalid_argument("certificate: unsupported version");
    }
    SubdivisionCertificate cert;
    cert.host_vertices = doc.at("host_vertices").get<std::size_t>();
    std::vector<Edge> pattern_edges;
    for (const auto& e : doc.at("pattern").at("edges")) {
      pattern_edges.push_back(normalized(e.at(0).get<Vertex>(), e.at(1).get<Vertex>()));
    }
    cert.pattern = Graph::from_edges(doc.at("pattern").at("vertices").get<std::size_t>(), pattern_edges);
    cert.branch_map = doc.at("branch_map").get<std::vector<Vertex>>();
    for (const auto& entry : doc.at("edge_paths")) {
      Edge key{entry.at("edge").at(0).get<Vertex>(), entry.at("edge").at(1).get<Vertex>()};
      if (!cert.edge_paths.emplace(key, PathRecord{entry.at("path").get<std::vector<Vertex>>()}).second) {
        throw std::invalid_argument("certificate: duplicate path for one pattern edge");
      }
    }
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("certificate: ") + e.what());
  }
}

inline SubdivisionCertificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  return parse_certificate(in);
}

}  // namespace dirac
