// SPDX-License-Identifier: Apache-2.0

#include "mimo/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mimo/errors.hpp"

namespace mimo {

namespace {

void format_double(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

}  // namespace

void write_matrix(std::ostream& os, const ComplexMatrix& m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            format_double(os, m(i, j).real());
            os << ' ';
            format_double(os, m(i, j).imag());
            os << '\n';
        }
    }
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream f(path);
    if (!f)
        throw IoError("cannot open for writing: " + path);
    write_matrix(f, m);
    f.flush();
    if (!f)
        throw IoError("write failed: " + path);
}

ComplexMatrix read_matrix(std::istream& is) {
    int rows = 0, cols = 0;
    if (!(is >> rows >> cols))
        throw IoError("matrix file: missing or malformed header");
    if (rows <= 0 || cols <= 0)
        throw IoError("matrix file: dimensions must be positive");
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            double re = 0.0, im = 0.0;
            if (!(is >> re >> im))
                throw IoError("matrix file: truncated entry list");
            m(i, j) = {re, im};
        }
    }
    return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open for reading: " + path);
    return read_matrix(f);
}

}  // namespace mimo
