#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypertree/asymptotics.hpp"
#include "hypertree/hypergraph.hpp"
#include "hypertree/threshold.hpp"

namespace hypertree::io {

using Json = nlohmann::json;

/// {"n": 4, "edges": [[0,1],[2,3]]}
Json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const Json& j);

/// {"r","s","n","parts": [[[cell,slot],...],...]}; re-validated on read.
Json to_json(const Configuration& c);
Configuration configuration_from_json(const Json& j);

/// Rationals are written as "p/q" strings so nothing is lost.
Json to_json(const SpectralPair& p);
SpectralPair spectral_from_json(const Json& j);

// Long doubles go through CSV with 21 significant digits, enough to
// reproduce the value bit-for-bit on read.
std::string format_ld(long double x);
long double parse_ld(const std::string& text);

/// decimals < 0 writes full precision; otherwise fixed-point with that many
/// decimals (values are expected to be rounded already).
void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows, int decimals = -1);
std::vector<Table1Row> read_table1_csv(std::istream& in);
/// digits < 0 writes full precision; otherwise that many significant digits.
void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows, int digits = -1);
std::vector<Table2Row> read_table2_csv(std::istream& in);

/// Splits one CSV line on commas (no quoting; our fields never need it).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace hypertree::io
