#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinmin/core.hpp"

namespace spinmin {

/// Malformed input file. `line()` is 1-based; 0 means end of input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class MatrixKind { kConnection, kRaw };

struct MatrixDocument {
  MatrixKind kind = MatrixKind::kConnection;
  RawMatrix matrix;
};

// Text format:
//   n <dim>          (or: raw n <dim>)
//   <dim> rows of <dim> whitespace-separated reals
// Blank lines and lines starting with '#' are ignored.
MatrixDocument read_matrix(std::istream& in);
MatrixDocument read_matrix_file(const std::string& path);

/// Parses a connection-matrix document; a `raw` header or a broken
/// symmetry/diagonal is reported as a ParseError.
ConnectionMatrix read_connection_matrix(std::istream& in);

void write_matrix(std::ostream& out, const ConnectionMatrix& J);
void write_raw_matrix(std::ostream& out, const RawMatrix& A);

// Pattern file: header "<n> <p>" followed by p rows of n values in {-1, 1}.
void write_patterns(std::ostream& out, std::size_t n, const std::vector<Configuration>& patterns);
std::vector<Configuration> read_patterns(std::istream& in);

// Linear-term file: header "linear n <dim>" followed by <dim> reals.
std::vector<double> read_linear_term(std::istream& in);
void write_linear_term(std::ostream& out, const std::vector<double>& h);

/// Shortest decimal text that parses back to the same double.
std::string format_real(double x);

}  // namespace spinmin
