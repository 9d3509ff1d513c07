#include "phiact/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace phiact {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error("matrix market: " + path + ": " + what);
}

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty() || line[0] == '%') continue;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    return true;
  }
  return false;
}

}  // namespace

Matrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");

  std::string header;
  if (!std::getline(in, header)) fail(path, "empty file");
  while (!header.empty() && (header.back() == '\r' || header.back() == '\n'))
    header.pop_back();
  std::istringstream hs(header);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket" || lower(object) != "matrix")
    fail(path, "malformed header line");
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "array" && format != "coordinate")
    fail(path, "unsupported format '" + format + "'");
  if (field != "real" && field != "integer")
    fail(path, "non-real field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    fail(path, "unsupported symmetry '" + symmetry + "'");
  const bool symmetric = symmetry == "symmetric";

  std::string line;
  if (!next_data_line(in, line)) fail(path, "missing size line");
  std::istringstream ss(line);
  long rows = 0, cols = 0, nnz = 0;
  if (!(ss >> rows >> cols)) fail(path, "malformed size line");
  if (format == "coordinate" && !(ss >> nnz)) fail(path, "missing entry count");
  if (rows <= 0 || cols <= 0) fail(path, "non-positive dimensions");
  if (rows != cols)
    fail(path, "matrix is " + std::to_string(rows) + "x" +
                   std::to_string(cols) + ", expected square");

  Matrix A = Matrix::Zero(rows, cols);
  if (format == "array") {
    // column-major dense listing; symmetric files store the lower triangle
    for (long j = 0; j < cols; ++j) {
      for (long i = symmetric ? j : 0; i < rows; ++i) {
        if (!next_data_line(in, line)) fail(path, "truncated array data");
        std::istringstream es(line);
        double value = 0.0;
        if (!(es >> value)) fail(path, "malformed entry");
        A(i, j) = value;
        if (symmetric) A(j, i) = value;
      }
    }
  } else {
    for (long k = 0; k < nnz; ++k) {
      if (!next_data_line(in, line)) fail(path, "truncated coordinate data");
      std::istringstream es(line);
      long i = 0, j = 0;
      double value = 0.0;
      if (!(es >> i >> j >> value)) fail(path, "malformed entry");
      if (i < 1 || i > rows || j < 1 || j > cols)
        fail(path, "entry index out of range");
      A(i - 1, j - 1) += value;
      if (symmetric && i != j) A(j - 1, i - 1) += value;
    }
  }
  if (!A.allFinite()) fail(path, "non-finite entries");
  return A;
}

void write_matrix_market(const std::string& path, const Matrix& A) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open file for writing");
  out << "%%MatrixMarket matrix array real general\n";
  out << A.rows() << " " << A.cols() << "\n";
  char buf[64];
  for (Index j = 0; j < A.cols(); ++j) {
    for (Index i = 0; i < A.rows(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", A(i, j));
      out << buf << "\n";
    }
  }
  if (!out) fail(path, "write failed");
}

}  // namespace phiact
