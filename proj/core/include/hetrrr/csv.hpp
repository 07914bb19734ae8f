#pragma once

#include <iosfwd>
#include <string>

#include "hetrrr/model.hpp"

namespace hetrrr::csv {

// Rectangular comma-separated matrices, row-major, '.' decimal separator.
// A single header row is allowed on input and is detected by its first row
// not parsing as numbers. Output never carries a header and uses the
// shortest decimal form that round-trips each double exactly.

Matrix parse_matrix(std::istream& in, const std::string& source = "<stream>");
Matrix read_matrix(const std::string& path);

void write_matrix(std::ostream& out, const Matrix& M);
void write_matrix(const std::string& path, const Matrix& M);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

}  // namespace hetrrr::csv
