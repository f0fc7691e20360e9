#pragma once

#include <string>
#include <vector>

#include "orbithull/io.hpp"

namespace suite {

// Argument vectors from fixtures/suite.json with "@name" resolved against
// the fixture directory.
inline std::vector<std::vector<std::string>> load(const std::string& fixtures) {
  const orbithull::Json j = orbithull::load_json(fixtures + "/suite.json");
  std::vector<std::vector<std::string>> runs;
  for (const auto& run : j.at("runs")) {
    std::vector<std::string> args;
    for (const auto& a : run.at("args")) {
      std::string s = a.get<std::string>();
      if (!s.empty() && s.front() == '@') s = fixtures + "/" + s.substr(1);
      args.push_back(s);
    }
    runs.push_back(std::move(args));
  }
  return runs;
}

}  // namespace suite
