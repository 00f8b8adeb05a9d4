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

#include "errtel/records_io.h"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace errtel::io {

namespace {

std::string number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

std::string cell(const std::string &text) {
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

std::string join(const std::vector<std::pair<std::string, std::string>> &labels, bool names) {
    std::string out;
    for (size_t k = 0; k < labels.size(); k++) {
        if (k) {
            out += ';';
        }
        out += names ? labels[k].first : labels[k].second;
    }
    return out;
}

}  // namespace

std::optional<Format> parse_format(std::string_view text) {
    if (text == "csv") {
        return Format::Csv;
    }
    if (text == "json") {
        return Format::Json;
    }
    return std::nullopt;
}

void write_csv(std::ostream &out, const std::vector<SweepRecord> &records, const std::string &config_json) {
    if (!config_json.empty()) {
        out << "# config: " << config_json << '\n';
    }
    out << kCsvHeader << '\n';
    for (const SweepRecord &r : records) {
        out << cell(join(r.labels, true)) << ',' << cell(join(r.labels, false)) << ',' << number(r.estimate) << ','
            << number(r.ci_low) << ',' << number(r.ci_high) << ',' << r.trials << ',' << r.seed << '\n';
    }
}

void write_json(std::ostream &out, const std::vector<SweepRecord> &records) {
    nlohmann::json array = nlohmann::json::array();
    for (const SweepRecord &r : records) {
        nlohmann::json names = nlohmann::json::array();
        nlohmann::json values = nlohmann::json::array();
        for (const auto &[name, value] : r.labels) {
            names.push_back(name);
            values.push_back(value);
        }
        array.push_back({{"param", names},
                         {"value", values},
                         {"estimate", r.estimate},
                         {"ci_low", r.ci_low},
                         {"ci_high", r.ci_high},
                         {"trials", r.trials},
                         {"seed", r.seed}});
    }
    out << array.dump(2) << '\n';
}

std::vector<SweepRecord> parse_json(std::string_view text) {
    std::vector<SweepRecord> records;
    try {
        nlohmann::json array = nlohmann::json::parse(text);
        if (!array.is_array()) {
            throw std::invalid_argument("expected a JSON array of records");
        }
        for (const auto &item : array) {
            SweepRecord r;
            const auto &names = item.at("param");
            const auto &values = item.at("value");
            if (names.size() != values.size()) {
                throw std::invalid_argument("param and value arrays differ in length");
            }
            for (size_t k = 0; k < names.size(); k++) {
                r.labels.emplace_back(names[k].get<std::string>(), values[k].get<std::string>());
            }
            r.estimate = item.at("estimate").get<double>();
            r.ci_low = item.at("ci_low").get<double>();
            r.ci_high = item.at("ci_high").get<double>();
            r.trials = item.at("trials").get<uint64_t>();
            r.seed = item.at("seed").get<uint64_t>();
            records.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed records: ") + e.what());
    }
    return records;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (size_t i = 0; i < line.size(); i++) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cells.back() += '"';
                i++;
            } else if (c == '"') {
                quoted = false;
            } else {
                cells.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.emplace_back();
        } else {
            cells.back() += c;
        }
    }
    return cells;
}

void emit(const std::vector<SweepRecord> &records, Format format, const std::string &path, std::ostream &fallback,
          const std::string &config_json) {
    auto write = [&](std::ostream &out) {
        if (format == Format::Csv) {
            write_csv(out, records, config_json);
        } else {
            write_json(out, records);
        }
    };
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write(file);
    file.flush();
    if (!file) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

}  // namespace errtel::io
