#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "isac/montecarlo.hpp"
#include "isac/system_model.hpp"

namespace isac {

inline constexpr const char* kVersionString = "isac-evd 1.0.0";

// Column-oriented result series for figure reproduction. Metadata carries the
// full config snapshot so any output file can be regenerated bit-exactly.
struct SweepTable {
  std::string name;
  std::vector<std::pair<std::string, std::vector<double>>> columns;

  nlohmann::json metadata;

  void add_column(const std::string& col_name);
  std::vector<double>& column(const std::string& col_name);
  void append_row(const std::vector<double>& values);
  size_t rows() const;
  void check_rectangular() const;

  std::string to_csv() const;
  nlohmann::json to_json() const;

  // writes <out_dir>/<name>.csv and <out_dir>/<name>.json
  void write(const std::string& out_dir) const;
};

nlohmann::json config_to_json(const SystemConfig& config);

SweepTable make_table(const std::string& name, const SystemConfig& config,
                      EigScaling scaling,
                      const std::vector<std::string>& column_names);

}  // namespace isac
