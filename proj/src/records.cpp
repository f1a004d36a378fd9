// Copyright 2026 The secprec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "secprec/records.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "secprec/errors.hpp"

namespace secprec {

std::string format_double(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

std::string sanitize(std::string field)
{
    for (char& c : field)
        if (c == ',' || c == '\n' || c == '\r')
            c = ';';
    return field;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

double parse_double(const std::string& s)
{
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size())
        throw Error("records: malformed number '" + s + "'");
    return v;
}

}  // namespace

std::string records_to_csv(const std::vector<TrialRecord>& records)
{
    std::string out = kRecordHeader;
    out += '\n';
    for (const auto& r : records) {
        out += sanitize(r.experiment) + ',' + std::to_string(r.m) + ',' + std::to_string(r.k) + ',' +
               format_double(r.beta) + ',' + format_double(r.nu) + ',' + format_double(r.rho_db) + ',' +
               sanitize(r.xi_policy) + ',' + format_double(r.xi_used) + ',' + std::to_string(r.seed) + ',' +
               format_double(r.per_antenna_sum_rate) + ',' + format_double(r.per_user_mean_rate) + ',' +
               format_double(r.deterministic_rate) + ',' + format_double(r.gap) + ',' + sanitize(r.flags) + '\n';
    }
    return out;
}

std::vector<TrialRecord> records_from_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kRecordHeader)
        throw Error("records: missing or unexpected CSV header");
    std::vector<TrialRecord> records;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto f = split(line);
        if (f.size() != 14)
            throw Error("records: expected 14 columns, got " + std::to_string(f.size()));
        TrialRecord r;
        r.experiment = f[0];
        r.m = std::stoi(f[1]);
        r.k = std::stoi(f[2]);
        r.beta = parse_double(f[3]);
        r.nu = parse_double(f[4]);
        r.rho_db = parse_double(f[5]);
        r.xi_policy = f[6];
        r.xi_used = parse_double(f[7]);
        r.seed = std::stoull(f[8]);
        r.per_antenna_sum_rate = parse_double(f[9]);
        r.per_user_mean_rate = parse_double(f[10]);
        r.deterministic_rate = parse_double(f[11]);
        r.gap = parse_double(f[12]);
        r.flags = f[13];
        records.push_back(std::move(r));
    }
    return records;
}

void write_text_file(const std::string& path, const std::string& contents)
{
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path(), ec);
    if (ec)
        throw Error("cannot create directory for '" + path + "': " + ec.message());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open '" + path + "' for writing");
    out << contents;
    out.flush();
    if (!out)
        throw Error("write to '" + path + "' failed");
}

void write_records(const std::vector<TrialRecord>& records, const std::string& path)
{
    write_text_file(path, records_to_csv(records));
}

std::vector<TrialRecord> read_records(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return records_from_csv(buf.str());
}

}  // namespace secprec
