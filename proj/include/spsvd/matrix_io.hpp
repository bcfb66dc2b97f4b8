#pragma once

#include <iosfwd>
#include <string>

#include "spsvd/types.hpp"

namespace spsvd {

// RFC-4180-style CSV of decimal reals, no header row. The reader rejects
// ragged rows, empty fields, and non-finite values, reporting 1-based line
// numbers via ParseError. Quoted numeric fields are accepted; embedded line
// breaks inside quotes are not (every field must parse as a number).
Matrix read_matrix_csv(std::istream& in);
Matrix read_matrix_csv_file(const std::string& path);

// Writes with shortest round-trip formatting, one row per line. Output is
// byte-reproducible for identical inputs.
void write_matrix_csv(std::ostream& out, const Matrix& X);
void write_matrix_csv_file(const std::string& path, const Matrix& X);

// Shortest representation that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace spsvd
