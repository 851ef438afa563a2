#include "benflow/cli/matrix_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace benflow::cli {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

bool parse_number(const std::string& field, double& out) {
  const std::string s = trim(field);
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno == 0 && std::isfinite(out);
}

// Numeric evaluation only; no independence is implied.
BasisPtr evaluation_basis(const std::vector<int>& extra_logs, const std::vector<NamedConstant>& constants) {
  std::vector<NamedConstant> c{{"pi", std::numbers::pi_v<long double>}};
  auto add_log = [&](int n) {
    const std::string name = "ln" + std::to_string(n);
    for (const auto& e : c)
      if (e.name == name) return;
    c.push_back({name, std::log(static_cast<long double>(n))});
  };
  for (int n = 2; n <= 16; ++n) add_log(n);
  for (int n : extra_logs) {
    if (n < 2) throw UsageError("logarithm symbols need an integer argument >= 2");
    add_log(n);
  }
  c.insert(c.end(), constants.begin(), constants.end());
  return std::make_shared<const SymbolBasis>(std::move(c));
}

double evaluate_entry(const std::string& s, const BasisPtr& basis) {
  double v;
  if (parse_number(s, v)) return v;
  return static_cast<double>(parse_exact(s, basis).value());
}

struct RawRow {
  std::vector<std::string> fields;
  std::vector<std::size_t> columns;
  std::size_t line;
};

std::vector<RawRow> split_csv(const std::string& text) {
  std::vector<RawRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    RawRow r;
    r.line = lineno;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      r.fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      r.columns.push_back(start + 1);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

SquareMatrix build_square(const std::vector<std::vector<double>>& rows) {
  const std::size_t d = rows.size();
  if (d == 0) throw UsageError("matrix is empty");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    if (rows[i].size() != d)
      throw UsageError("matrix is not square: row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " + std::to_string(d));
    for (std::size_t j = 0; j < d; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return SquareMatrix(std::move(m));
}

std::string entry_text(const json& e) {
  if (e.is_number()) return "";
  if (e.is_string()) return e.get<std::string>();
  throw UsageError("matrix entries must be numbers or expression strings");
}

MatrixInput parse_json_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("invalid JSON", line, col);
  }
  MatrixInput in;
  const json* rows = &j;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "matrix" && it.key() != "basis" && it.key() != "eigenvalues")
        throw UsageError("unknown matrix file key '" + it.key() + "'");
    if (!j.contains("matrix")) throw UsageError("matrix file object lacks 'matrix'");
    rows = &j.at("matrix");
    if (j.contains("basis")) {
      const json& b = j.at("basis");
      try {
        if (b.contains("logs")) in.extra_logs = b.at("logs").get<std::vector<int>>();
        if (b.contains("constants"))
          for (const auto& c : b.at("constants"))
            in.constants.push_back({c.at("name").get<std::string>(), c.at("value").get<long double>()});
      } catch (const json::exception& e) {
        throw UsageError(std::string("malformed basis annotation: ") + e.what());
      }
    }
    if (j.contains("eigenvalues")) {
      for (const auto& e : j.at("eigenvalues")) {
        auto field = [&](const char* k) -> std::string {
          if (!e.contains(k)) return "0";
          const json& v = e.at(k);
          if (v.is_string()) return v.get<std::string>();
          if (v.is_number_integer()) return std::to_string(v.get<long long>());
          throw UsageError("exact eigenvalue coordinates must be strings or integers");
        };
        in.eigenvalues.push_back({field("re"), field("im")});
      }
    }
  }
  if (!rows->is_array()) throw UsageError("matrix must be a JSON array of arrays");
  const BasisPtr basis = evaluation_basis(in.extra_logs, in.constants);
  std::vector<std::vector<double>> values;
  for (std::size_t i = 0; i < rows->size(); ++i) {
    const json& row = (*rows)[i];
    if (!row.is_array()) throw UsageError("matrix row " + std::to_string(i + 1) + " is not an array");
    std::vector<double> r;
    for (std::size_t k = 0; k < row.size(); ++k) {
      const json& e = row[k];
      try {
        const std::string s = entry_text(e);
        r.push_back(s.empty() ? e.get<double>() : evaluate_entry(s, basis));
      } catch (const std::exception& ex) {
        throw ParseError(std::string("matrix entry: ") + ex.what(), i + 1, k + 1);
      }
    }
    values.push_back(std::move(r));
  }
  in.matrix = build_square(values);
  return in;
}

MatrixInput parse_csv_matrix(const std::string& text) {
  const BasisPtr basis = evaluation_basis({}, {});
  std::vector<std::vector<double>> values;
  for (const auto& row : split_csv(text)) {
    std::vector<double> r;
    for (std::size_t k = 0; k < row.fields.size(); ++k) {
      try {
        r.push_back(evaluate_entry(trim(row.fields[k]), basis));
      } catch (const std::exception& ex) {
        throw ParseError(std::string("bad matrix entry '") + trim(row.fields[k]) + "': " + ex.what(), row.line,
                         row.columns[k]);
      }
    }
    values.push_back(std::move(r));
  }
  MatrixInput in;
  in.matrix = build_square(values);
  return in;
}

}  // namespace

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : UsageError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

BasisPtr MatrixInput::basis(Base b) const { return SymbolBasis::standard(b, extra_logs, constants); }

MatrixInput parse_matrix_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw UsageError("matrix input is empty");
  if (text[first] == '[' || text[first] == '{') return parse_json_matrix(text);
  return parse_csv_matrix(text);
}

MatrixInput read_matrix_file(const std::string& path) { return parse_matrix_text(read_text_file(path)); }

SignalData parse_signal_csv(const std::string& text) {
  SignalData out;
  bool first = true;
  for (const auto& row : split_csv(text)) {
    double t, v;
    const bool ok = row.fields.size() == 2 && parse_number(row.fields[0], t) && parse_number(row.fields[1], v);
    if (!ok) {
      if (first && row.fields.size() == 2) {
        first = false;
        continue;  // header
      }
      std::size_t col = row.columns.front();
      if (row.fields.size() == 2 && parse_number(row.fields[0], t)) col = row.columns[1];
      throw ParseError(row.fields.size() != 2 ? "expected two columns (t, value)" : "non-numeric value", row.line,
                       col);
    }
    first = false;
    out.t.push_back(t);
    out.value.push_back(v);
  }
  if (out.t.empty()) throw UsageError("signal CSV holds no samples");
  return out;
}

SignalData read_signal_csv(const std::string& path) { return parse_signal_csv(read_text_file(path)); }

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace benflow::cli
