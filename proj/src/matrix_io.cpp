#include "spinmin/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace spinmin {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? "end of input: " + message
                                   : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

/// Yields non-blank, non-comment lines with their 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string>& tokens) {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      const auto start = text.find_first_not_of(" \t\r");
      if (start == std::string::npos || text[start] == '#') continue;
      tokens.clear();
      std::istringstream ss(text);
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      return true;
    }
    line_ = 0;
    return false;
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

double parse_real(const std::string& tok, std::size_t line) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParseError(line, "not a number: '" + tok + "'");
  if (!std::isfinite(value)) throw ParseError(line, "non-finite value: '" + tok + "'");
  return value;
}

std::size_t parse_dimension(const std::string& tok, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || value == 0)
    throw ParseError(line, "expected a positive integer, got '" + tok + "'");
  return value;
}

std::vector<std::string> expect_line(LineReader& reader, const char* what) {
  std::vector<std::string> tokens;
  if (!reader.next(tokens)) throw ParseError(0, std::string("missing ") + what);
  return tokens;
}

}  // namespace

MatrixDocument read_matrix(std::istream& in) {
  LineReader reader(in);
  auto header = expect_line(reader, "header");
  MatrixDocument doc;
  std::size_t n = 0;
  if (header.size() == 2 && header[0] == "n") {
    doc.kind = MatrixKind::kConnection;
    n = parse_dimension(header[1], reader.line());
  } else if (header.size() == 3 && header[0] == "raw" && header[1] == "n") {
    doc.kind = MatrixKind::kRaw;
    n = parse_dimension(header[2], reader.line());
  } else {
    throw ParseError(reader.line(), "expected header 'n <dim>' or 'raw n <dim>'");
  }

  std::vector<double> entries;
  entries.reserve(n * n);
  std::vector<std::size_t> row_lines(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto tokens = expect_line(reader, "matrix row");
    row_lines[i] = reader.line();
    if (tokens.size() != n)
      throw ParseError(reader.line(), "row " + std::to_string(i + 1) + " has " +
                                          std::to_string(tokens.size()) + " values, expected " +
                                          std::to_string(n));
    for (const auto& tok : tokens) entries.push_back(parse_real(tok, reader.line()));
  }
  std::vector<std::string> extra;
  if (reader.next(extra)) throw ParseError(reader.line(), "unexpected content after matrix rows");

  if (doc.kind == MatrixKind::kConnection) {
    for (std::size_t i = 0; i < n; ++i) {
      if (entries[i * n + i] != 0.0)
        throw ParseError(row_lines[i], "diagonal entry must be zero (use 'raw n' for general matrices)");
      for (std::size_t j = 0; j < i; ++j)
        if (entries[i * n + j] != entries[j * n + i])
          throw ParseError(row_lines[i], "matrix is not symmetric in column " + std::to_string(j + 1) +
                                             " (use 'raw n' for general matrices)");
    }
  }
  doc.matrix = RawMatrix(n, std::move(entries));
  return doc;
}

MatrixDocument read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_matrix(in);
}

ConnectionMatrix read_connection_matrix(std::istream& in) {
  auto doc = read_matrix(in);
  if (doc.kind == MatrixKind::kRaw)
    throw ParseError(1, "raw matrix given where a connection matrix is required");
  return ConnectionMatrix(doc.matrix);
}

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

void write_rows(std::ostream& out, std::size_t n, std::span<const double> entries) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << format_real(entries[i * n + j]);
    }
    out << '\n';
  }
}

}  // namespace

void write_matrix(std::ostream& out, const ConnectionMatrix& J) {
  out << "n " << J.size() << '\n';
  write_rows(out, J.size(), J.entries());
}

void write_raw_matrix(std::ostream& out, const RawMatrix& A) {
  out << "raw n " << A.size() << '\n';
  write_rows(out, A.size(), A.entries());
}

void write_patterns(std::ostream& out, std::size_t n, const std::vector<Configuration>& patterns) {
  out << n << ' ' << patterns.size() << '\n';
  for (const auto& xi : patterns) {
    for (std::size_t i = 0; i < xi.size(); ++i) out << (i ? " " : "") << int(xi[i]);
    out << '\n';
  }
}

std::vector<Configuration> read_patterns(std::istream& in) {
  LineReader reader(in);
  auto header = expect_line(reader, "header");
  if (header.size() != 2) throw ParseError(reader.line(), "expected header '<n> <p>'");
  const std::size_t n = parse_dimension(header[0], reader.line());
  const std::size_t p = parse_dimension(header[1], reader.line());
  std::vector<Configuration> patterns;
  for (std::size_t mu = 0; mu < p; ++mu) {
    auto tokens = expect_line(reader, "pattern row");
    if (tokens.size() != n) throw ParseError(reader.line(), "pattern has wrong length");
    std::vector<Spin> spins;
    for (const auto& tok : tokens) {
      if (tok == "1" || tok == "+1")
        spins.push_back(1);
      else if (tok == "-1")
        spins.push_back(-1);
      else
        throw ParseError(reader.line(), "pattern entries must be -1 or 1, got '" + tok + "'");
    }
    patterns.emplace_back(std::move(spins));
  }
  return patterns;
}

std::vector<double> read_linear_term(std::istream& in) {
  LineReader reader(in);
  auto header = expect_line(reader, "header");
  if (header.size() != 3 || header[0] != "linear" || header[1] != "n")
    throw ParseError(reader.line(), "expected header 'linear n <dim>'");
  const std::size_t n = parse_dimension(header[2], reader.line());
  std::vector<double> h;
  std::vector<std::string> tokens;
  while (reader.next(tokens)) {
    for (const auto& tok : tokens) {
      if (h.size() == n) throw ParseError(reader.line(), "more than " + std::to_string(n) + " values");
      h.push_back(parse_real(tok, reader.line()));
    }
  }
  if (h.size() != n)
    throw ParseError(0, "expected " + std::to_string(n) + " values, got " + std::to_string(h.size()));
  return h;
}

void write_linear_term(std::ostream& out, const std::vector<double>& h) {
  out << "linear n " << h.size() << '\n';
  for (std::size_t i = 0; i < h.size(); ++i) out << (i ? " " : "") << format_real(h[i]);
  out << '\n';
}

}  // namespace spinmin
