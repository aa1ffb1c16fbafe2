#include "hypertree/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "hypertree/error.hpp"

namespace hypertree::io {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("malformed input: " + what);
}

void read_rows(std::istream& in, const std::string& header,
                                   std::vector<std::vector<std::string>>& rows, std::size_t width) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "missing CSV header");
  require(line == header, "unexpected CSV header '" + line + "'");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    require(fields.size() == width, "CSV row '" + line + "'");
    rows.push_back(std::move(fields));
  }
}

int parse_int(const std::string& text) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == text.size() && !text.empty(), "integer '" + text + "'");
  return v;
}

}  // namespace

Json to_json(const Hypergraph& h) {
  return Json{{"n", h.n()}, {"edges", h.edge_list()}};
}

Hypergraph hypergraph_from_json(const Json& j) {
  require(j.is_object() && j.contains("n") && j.contains("edges"), "hypergraph needs n and edges");
  require(j["n"].is_number_integer(), "n must be an integer");
  require(j["edges"].is_array(), "edges must be an array");
  auto edges = j["edges"].get<std::vector<std::vector<Vertex>>>();
  return Hypergraph(j["n"].get<std::int64_t>(), edges);
}

Json to_json(const Configuration& c) {
  Json parts = Json::array();
  for (std::size_t i = 0; i < c.num_parts(); ++i) {
    Json part = Json::array();
    for (const Point& p : c.part(i)) part.push_back({p.cell, p.slot});
    parts.push_back(std::move(part));
  }
  const ModelParams& m = c.params();
  return Json{{"r", m.r}, {"s", m.s}, {"n", m.n}, {"parts", std::move(parts)}};
}

Configuration configuration_from_json(const Json& j) {
  require(j.is_object(), "configuration must be an object");
  for (const char* key : {"r", "s", "n"}) {
    require(j.contains(key) && j[key].is_number_integer(), std::string(key) + " must be an integer");
  }
  require(j.contains("parts") && j["parts"].is_array(), "parts must be an array");
  const ModelParams params = validate_params(j["r"].get<int>(), j["s"].get<int>(), j["n"].get<std::int64_t>());
  std::vector<Point> flat;
  for (const Json& part : j["parts"]) {
    require(part.is_array(), "each part must be an array");
    for (const Json& pt : part) {
      require(pt.is_array() && pt.size() == 2, "points are [cell, slot] pairs");
      flat.push_back({pt[0].get<Vertex>(), pt[1].get<std::int32_t>()});
    }
    require(part.size() == static_cast<std::size_t>(params.s), "each part needs s points");
  }
  return Configuration(params, std::move(flat));
}

Json to_json(const SpectralPair& p) {
  return Json{{"j", p.j}, {"lambda", to_string(p.lambda)}, {"zeta", to_string(p.zeta)}};
}

SpectralPair spectral_from_json(const Json& j) {
  require(j.is_object() && j.contains("j") && j.contains("lambda") && j.contains("zeta"),
          "spectral record needs j, lambda, zeta");
  return {j["j"].get<int>(), parse_q(j["lambda"].get<std::string>()),
          parse_q(j["zeta"].get<std::string>())};
}

std::string format_ld(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", x);
  return buf;
}

long double parse_ld(const std::string& text) {
  std::size_t used = 0;
  long double v = 0;
  try {
    v = std::stold(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == text.size() && !text.empty(), "number '" + text + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows, int decimals) {
  auto f = [&](long double x) {
    if (decimals < 0) return format_ld(x);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lf", decimals, x);
    return std::string(buf);
  };
  out << "s,rho_minus,rho,rho_plus\n";
  for (const auto& r : rows) {
    out << r.s << ',' << f(r.rho_minus) << ',' << f(r.rho) << ',' << f(r.rho_plus) << '\n';
  }
}

std::vector<Table1Row> read_table1_csv(std::istream& in) {
  std::vector<std::vector<std::string>> raw;
  read_rows(in, "s,rho_minus,rho,rho_plus", raw, 4);
  std::vector<Table1Row> rows;
  for (const auto& f : raw) rows.push_back({parse_int(f[0]), parse_ld(f[1]), parse_ld(f[2]), parse_ld(f[3])});
  return rows;
}

void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows, int digits) {
  auto f = [&](long double x) {
    if (digits < 0) return format_ld(x);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lg", digits, x);
    return std::string(buf);
  };
  out << "s,L_at_rho_minus,L_at_rho_plus\n";
  for (const auto& r : rows) out << r.s << ',' << f(r.L_at_rho_minus) << ',' << f(r.L_at_rho_plus) << '\n';
}

std::vector<Table2Row> read_table2_csv(std::istream& in) {
  std::vector<std::vector<std::string>> raw;
  read_rows(in, "s,L_at_rho_minus,L_at_rho_plus", raw, 3);
  std::vector<Table2Row> rows;
  for (const auto& f : raw) rows.push_back({parse_int(f[0]), parse_ld(f[1]), parse_ld(f[2])});
  return rows;
}

}  // namespace hypertree::io
