// Copyright 2026 The spingkp Authors
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

#ifndef SPINGKP_CSV_HPP_
#define SPINGKP_CSV_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace spingkp {

// Comma-separated text with RFC 4180 quoting. Every row has the header's
// width.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a named column; throws when absent.
  std::size_t column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv_file(const std::filesystem::path& path);
std::string format_csv_line(const std::vector<std::string>& cells);

}  // namespace spingkp

#endif  // SPINGKP_CSV_HPP_
