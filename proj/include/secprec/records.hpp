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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace secprec {

/// One CSV row. Column meaning per experiment is documented in README.md.
struct TrialRecord {
    std::string experiment;
    int m = 0;
    int k = 0;
    double beta = 0.0;
    double nu = 0.0;
    double rho_db = 0.0;
    std::string xi_policy;
    double xi_used = 0.0;
    std::uint64_t seed = 0;
    double per_antenna_sum_rate = 0.0;
    double per_user_mean_rate = 0.0;
    double deterministic_rate = 0.0;
    double gap = 0.0;
    std::string flags;  // ';'-separated key=value annotations

    bool operator==(const TrialRecord&) const = default;
};

inline constexpr const char* kRecordHeader =
    "experiment,M,K,beta,nu,rho_db,xi_policy,xi_used,seed,per_antenna_sum_rate,per_user_mean_rate,"
    "deterministic_rate,gap,flags";

/// Shortest-safe round-trip formatting: 17 significant digits.
std::string format_double(double value);

std::string records_to_csv(const std::vector<TrialRecord>& records);
std::vector<TrialRecord> records_from_csv(const std::string& text);

/// Writes the CSV, creating parent directories. Throws secprec::Error with
/// the path on I/O failure.
void write_records(const std::vector<TrialRecord>& records, const std::string& path);
std::vector<TrialRecord> read_records(const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace secprec
