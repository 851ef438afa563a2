#pragma once

// Matrix and signal file formats.
//
// Matrices: CSV rows, a JSON array of arrays, or a JSON object
//   {"matrix": [[...]], "basis": {"logs": [2], "constants": [{"name", "value"}]},
//    "eigenvalues": [{"re": "1", "im": "pi"}, ...]}
// Entries may be numbers or expressions such as "2*pi/ln10".

#include <string>
#include <vector>

#include "benflow/errors.hpp"
#include "benflow/exact.hpp"
#include "benflow/matrix_core.hpp"

namespace benflow::cli {

class ParseError : public UsageError {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

struct EigenvalueAnnotation {
  std::string re;
  std::string im;
};

struct MatrixInput {
  SquareMatrix matrix = SquareMatrix::zero(1);
  std::vector<int> extra_logs;
  std::vector<NamedConstant> constants;
  std::vector<EigenvalueAnnotation> eigenvalues;

  bool annotated() const noexcept { return !eigenvalues.empty(); }
  // Basis {1, pi, ln b, extra logs, constants}.
  BasisPtr basis(Base b) const;
};

MatrixInput parse_matrix_text(const std::string& text);
MatrixInput read_matrix_file(const std::string& path);

struct SignalData {
  std::vector<double> t;
  std::vector<double> value;
};

// Two columns (t, value), optional header line, '#' comments.
SignalData parse_signal_csv(const std::string& text);
SignalData read_signal_csv(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace benflow::cli
