/*
 * Copyright 2026 The seqgp Authors
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

#ifndef SEQGP_EXPERIMENTS_CSV_HPP
#define SEQGP_EXPERIMENTS_CSV_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "seqgp/types.hpp"

namespace seqgp {

/// A numeric table with named columns, the unit of experiment output.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::initializer_list<double> values);
  void add_row(std::vector<double> values);

  /// Index of a named column; throws naming the missing column.
  Index column(const std::string& name) const;

  Index n_rows() const { return Index(rows.size()); }
};

/// Doubles are emitted at 17 significant digits so emit -> ingest round trips
/// are lossless.
std::string format_double(double v);

Table read_csv(const std::string& path);
void write_csv(const Table& table, const std::string& path);
std::string to_csv_string(const Table& table);

}  // namespace seqgp

#endif  // SEQGP_EXPERIMENTS_CSV_HPP
