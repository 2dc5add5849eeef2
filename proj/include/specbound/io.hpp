#ifndef SPECBOUND_IO_HPP
#define SPECBOUND_IO_HPP

//
// Matrix ingestion and export.
//
// Matrix Market array format, complex general fields (column-major entry
// order), e.g.
//     %%MatrixMarket matrix array complex general
//     3 3
//     <re> <im>
//     ...
//
// Plain CSV alternative: a "# rows cols" header line followed by one
// "re,im" pair per line in row-major order. The CSV writer/reader pair
// round-trips doubles bit-exactly (shortest round-trip formatting).
//

#include <iosfwd>
#include <string>

#include "specbound/pseudospectra.hpp"
#include "specbound/spectral.hpp"

namespace specbound {

OperatorMatrix read_matrix_market(std::istream& in, const std::string& name = "<stream>");
void write_matrix_market(std::ostream& out, const ComplexMatrix& m,
                         const std::string& comment = "");

OperatorMatrix read_csv_matrix(std::istream& in, const std::string& name = "<stream>");
void write_csv_matrix(std::ostream& out, const ComplexMatrix& m);

// Dispatches on content: "%%MatrixMarket" header or "# rows cols" CSV header.
OperatorMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

// Grid export: re, im, s_min, member (0/1/2) per node.
void write_grid_csv(std::ostream& out, const PseudoGrid& grid);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace specbound

#endif
