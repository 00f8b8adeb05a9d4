// Copyright 2026 The errtel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errtel/sweep_harness.h"

namespace errtel::io {

enum class Format : uint8_t { Csv, Json };
std::optional<Format> parse_format(std::string_view text);

inline constexpr std::string_view kCsvHeader = "param,value,estimate,ci_low,ci_high,trials,seed";

/// Header, then one row per record. A record swept along several axes joins
/// its axis names and values with ';'. Cells containing ',' or '"' are quoted.
/// Numbers use 6 significant digits. A non-empty `config_json` is written
/// first as a "# config: ..." comment line.
void write_csv(std::ostream &out, const std::vector<SweepRecord> &records, const std::string &config_json = {});

/// JSON array of objects with the CSV column names; "param" and "value" are
/// arrays of strings, numbers keep full precision so the output round-trips.
void write_json(std::ostream &out, const std::vector<SweepRecord> &records);

/// Reads write_json output back. Only the serialized fields are restored.
/// Throws std::invalid_argument on malformed input.
std::vector<SweepRecord> parse_json(std::string_view text);

/// Splits one CSV line into cells, undoing the quoting of write_csv.
std::vector<std::string> split_csv_line(std::string_view line);

/// Writes `records` to `path`, or to `fallback` when path is empty. Throws
/// std::runtime_error if the file cannot be written.
void emit(const std::vector<SweepRecord> &records, Format format, const std::string &path, std::ostream &fallback,
          const std::string &config_json = {});

}  // namespace errtel::io
