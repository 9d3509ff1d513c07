#ifndef PHIACT_MATRIX_MARKET_HPP
#define PHIACT_MATRIX_MARKET_HPP

#include <string>

#include "phiact/linop.hpp"

namespace phiact {

/// Reads a square real matrix from a Matrix Market file.  Supports the
/// `array` and `coordinate` formats with `general` or `symmetric`
/// symmetry (symmetric files are expanded); `integer` entries are read
/// as reals.  Complex/pattern fields, non-square sizes, and malformed
/// input are rejected, each with its own diagnostic.
Matrix read_matrix_market(const std::string& path);

/// Writes a dense matrix in array/general format with round-trippable
/// precision (17 significant digits).
void write_matrix_market(const std::string& path, const Matrix& A);

}  // namespace phiact

#endif  // PHIACT_MATRIX_MARKET_HPP
