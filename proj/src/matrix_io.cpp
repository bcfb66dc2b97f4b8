#include "spsvd/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>
#include <vector>

#include "spsvd/errors.hpp"

namespace spsvd {
namespace {

// Splits one CSV record into raw field strings, honoring double quotes.
std::vector<std::string> split_fields(const std::string& line,
                                      std::size_t lineno) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", lineno);
  fields.push_back(cur);
  return fields;
}

double parse_field(const std::string& raw, std::size_t lineno,
                   std::size_t col) {
  std::size_t b = 0;
  std::size_t e = raw.size();
  while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
  if (b == e)
    throw ParseError("empty field in column " + std::to_string(col + 1),
                     lineno);
  double value = 0.0;
  const auto* first = raw.data() + b;
  const auto* last = raw.data() + e;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ParseError("field '" + raw.substr(b, e - b) + "' is not a number",
                     lineno);
  if (!std::isfinite(value))
    throw ParseError("non-finite value '" + raw.substr(b, e - b) + "'",
                     lineno);
  return value;
}

}  // namespace

Matrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::char_traits<char>::eof())
      break;  // tolerate a trailing newline
    const auto fields = split_fields(line, lineno);
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c)
      row[c] = parse_field(fields[c], lineno, c);
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError("ragged row: expected " + std::to_string(width) +
                           " fields, got " + std::to_string(row.size()),
                       lineno);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty matrix input", 1);
  Matrix X(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j)
      X(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return X;
}

Matrix read_matrix_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "' for reading");
  return read_matrix_csv(in);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_matrix_csv(std::ostream& out, const Matrix& X) {
  for (Index i = 0; i < X.rows(); ++i) {
    for (Index j = 0; j < X.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(X(i, j));
    }
    out << '\n';
  }
}

void write_matrix_csv_file(const std::string& path, const Matrix& X) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open '" + path + "' for writing");
  write_matrix_csv(out, X);
}

}  // namespace spsvd
