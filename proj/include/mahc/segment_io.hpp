// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>

#include "mahc/dataset.hpp"

namespace mahc {

// Line-delimited JSON, one segment per line:
//   {"id": 7, "label": "aa", "frames": [[0.1, 0.2], [0.3, 0.4]]}
// "label" is optional and may be a string or an integer. Blank lines are
// skipped. Parse errors name the 1-based line number.

Dataset read_segments(std::istream& in);
Dataset load_segments(const std::filesystem::path& path);

void write_segments(std::ostream& out, const Dataset& dataset);
void save_segments(const std::filesystem::path& path, const Dataset& dataset);

}  // namespace mahc
