// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "mimo/complex_matrix.hpp"

namespace mimo {

// Plain-text matrix format used by every tool in this repository:
//   line 1:            "rows cols"
//   next rows*cols:    "re im" in row-major order
// Values are written with 17 significant digits, so a read of a written
// file reproduces the matrix bit-exactly.
void write_matrix(std::ostream& os, const ComplexMatrix& m);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

ComplexMatrix read_matrix(std::istream& is);
ComplexMatrix read_matrix_file(const std::string& path);

}  // namespace mimo
