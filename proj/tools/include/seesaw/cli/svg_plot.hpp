/*
 * Copyright (c) 2026, The Seesaw Lab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <vector>

namespace seesaw::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = true;
  int width = 720;
  int height = 440;
};

/// Static line chart; points that are non-finite (or non-positive on a log
/// axis) are dropped.
std::string render_svg(const std::vector<Series>& series, const PlotSpec& spec);

/// Reads two named columns of a CSV with a header row.
Series series_from_csv_text(const std::string& csv, const std::string& x_column,
                            const std::string& y_column, const std::string& label);
Series series_from_csv_file(const std::string& path, const std::string& x_column,
                            const std::string& y_column);

} // namespace seesaw::cli
