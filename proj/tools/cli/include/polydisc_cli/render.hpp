#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polydisc/geometry.hpp"

namespace polydisc::cli {

// 800x800 viewport, 5% margin. Points carry class="point", diameter edges class="diameter".
std::string render_svg(const PointConfig& z, double rel_tol = 1e-9);

struct TableRow {
  int n = 0;
  double log_delta = 0.0;  // log Delta at diameter 2
  double delta_bar = 0.0;
  std::optional<double> delta_bar_section4;
};

std::string table_csv(const std::vector<TableRow>& rows);
std::vector<TableRow> parse_table_csv(const std::string& text);

}  // namespace polydisc::cli
