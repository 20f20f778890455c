// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "uccvqe/fcidump.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return UCCVQE_DATA_DIR; }

struct Point {
  std::filesystem::path fcidump;
  double bond_length = 0.0;
  nlohmann::json meta;
};

inline uccvqe::IntegralSet load(const std::filesystem::path& p) {
  std::ifstream in(p);
  return uccvqe::parse_fcidump(in);
}

/// Grid points of one molecule in ascending bond length.
inline std::vector<Point> grid(const std::string& molecule) {
  std::vector<Point> out;
  for (const auto& e : std::filesystem::directory_iterator(data_dir() / molecule)) {
    if (e.path().extension() != ".fcidump") continue;
    Point pt;
    pt.fcidump = e.path();
    auto meta_path = e.path();
    meta_path.replace_extension(".meta.json");
    std::ifstream in(meta_path);
    pt.meta = nlohmann::json::parse(in);
    pt.bond_length = pt.meta.at("bond_length").get<double>();
    out.push_back(std::move(pt));
  }
  std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) { return a.fcidump < b.fcidump; });
  return out;
}

}  // namespace fixtures
