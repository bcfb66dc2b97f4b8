#include "doctest.h"

#include <cstdio>
#include <sstream>
#include <string>

#include "spsvd/errors.hpp"
#include "spsvd/matrix_io.hpp"
#include "spsvd/rng.hpp"
#include "spsvd/types.hpp"

using spsvd::Index;
using spsvd::Matrix;

TEST_SUITE("matrix_io") {

TEST_CASE("reads a plain matrix") {
  std::istringstream in("1,2,3\n4,5,6\n");
  const Matrix X = spsvd::read_matrix_csv(in);
  REQUIRE(X.rows() == 2);
  REQUIRE(X.cols() == 3);
  CHECK(X(0, 0) == 1.0);
  CHECK(X(1, 2) == 6.0);
}

TEST_CASE("handles CRLF line endings and a missing final newline") {
  std::istringstream in("1,2\r\n3,4");
  const Matrix X = spsvd::read_matrix_csv(in);
  REQUIRE(X.rows() == 2);
  CHECK(X(1, 0) == 3.0);
  CHECK(X(1, 1) == 4.0);
}

TEST_CASE("handles quoted fields and surrounding spaces") {
  std::istringstream in("\"1.5\", 2.5\n-3 ,\"4\"\n");
  const Matrix X = spsvd::read_matrix_csv(in);
  CHECK(X(0, 0) == 1.5);
  CHECK(X(0, 1) == 2.5);
  CHECK(X(1, 0) == -3.0);
  CHECK(X(1, 1) == 4.0);
}

TEST_CASE("scientific notation and special spellings parse") {
  std::istringstream in("1e3,-2.5E-2\n0.0,12345.6789\n");
  const Matrix X = spsvd::read_matrix_csv(in);
  CHECK(X(0, 0) == 1000.0);
  CHECK(X(0, 1) == -0.025);
}

TEST_CASE("ragged rows are rejected with the offending line number") {
  std::istringstream in("1,2\n3\n");
  try {
    (void)spsvd::read_matrix_csv(in);
    FAIL("expected a parse error");
  } catch (const spsvd::ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("non-numeric fields are rejected with line numbers") {
  std::istringstream in("1,2\n3,oops\n");
  try {
    (void)spsvd::read_matrix_csv(in);
    FAIL("expected a parse error");
  } catch (const spsvd::ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("non-finite values are rejected") {
  std::istringstream in("1,inf\n");
  CHECK_THROWS_AS((void)spsvd::read_matrix_csv(in), spsvd::ParseError);
  std::istringstream in2("nan,1\n");
  CHECK_THROWS_AS((void)spsvd::read_matrix_csv(in2), spsvd::ParseError);
}

TEST_CASE("empty input and empty fields are rejected") {
  std::istringstream in("");
  CHECK_THROWS_AS((void)spsvd::read_matrix_csv(in), spsvd::ParseError);
  std::istringstream in2("1,,3\n");
  CHECK_THROWS_AS((void)spsvd::read_matrix_csv(in2), spsvd::ParseError);
}

TEST_CASE("unopenable path raises a parameter error") {
  CHECK_THROWS_AS(
      (void)spsvd::read_matrix_csv_file("/nonexistent/nope.csv"),
      spsvd::ParameterError);
}

TEST_CASE("write then read is an exact round trip") {
  spsvd::Philox rng(77, 0);
  Matrix X = spsvd::gaussian_matrix(rng, 9, 5);
  X(0, 0) = 1.0 / 3.0;
  X(1, 1) = 1e-300;
  X(2, 2) = -9.87654321e200;
  X(3, 3) = 0.1;
  std::ostringstream out;
  spsvd::write_matrix_csv(out, X);
  std::istringstream in(out.str());
  const Matrix Y = spsvd::read_matrix_csv(in);
  REQUIRE(Y.rows() == X.rows());
  REQUIRE(Y.cols() == X.cols());
  for (Index i = 0; i < X.rows(); ++i)
    for (Index j = 0; j < X.cols(); ++j) CHECK(X(i, j) == Y(i, j));
}

TEST_CASE("format_double uses shortest round-trip form") {
  CHECK(spsvd::format_double(1.0) == "1");
  CHECK(spsvd::format_double(0.1) == "0.1");
  CHECK(spsvd::format_double(-2.5) == "-2.5");
}

TEST_CASE("file round trip") {
  const std::string path = "io_roundtrip_tmp.csv";
  Matrix X(2, 2);
  X << 1.25, -2, 3, 4.75;
  spsvd::write_matrix_csv_file(path, X);
  const Matrix Y = spsvd::read_matrix_csv_file(path);
  CHECK((X - Y).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
}

}  // TEST_SUITE
