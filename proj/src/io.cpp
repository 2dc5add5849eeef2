#include "specbound/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "specbound/errors.hpp"

namespace specbound {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

namespace {

double parse_number(std::string_view token, const std::string& name, std::size_t line) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(name + ":" + std::to_string(line) + ": bad number '" +
                         std::string(token) + "'");
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

OperatorMatrix read_matrix_market(std::istream& in, const std::string& name) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError(name + ": empty file");
    ++lineno;

    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket")
        throw ParseError(name + ":1: missing %%MatrixMarket banner");
    if (lower(object) != "matrix" || lower(format) != "array")
        throw ParseError(name + ":1: only 'matrix array' files are supported");
    const std::string f = lower(field);
    if (f != "complex" && f != "real")
        throw ParseError(name + ":1: only complex or real fields are supported");
    if (lower(symmetry) != "general")
        throw ParseError(name + ":1: only 'general' symmetry is supported");
    const bool complex_field = (f == "complex");

    // size line, after comments
    Eigen::Index rows = 0, cols = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '%') continue;
        std::istringstream size_line(line);
        long long r = 0, c = 0;
        if (!(size_line >> r >> c) || r <= 0 || c <= 0)
            throw ParseError(name + ":" + std::to_string(lineno) + ": bad size line '" +
                             line + "'");
        rows = r;
        cols = c;
        break;
    }
    if (rows == 0) throw ParseError(name + ": missing size line");

    ComplexMatrix m(rows, cols);
    // Array format lists entries in column-major order.
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            double re = 0.0, im = 0.0;
            while (true) {
                if (!std::getline(in, line))
                    throw ParseError(name + ": unexpected end of file at entry (" +
                                     std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                     ")");
                ++lineno;
                if (line.empty() || line[0] == '%') continue;
                std::istringstream entry(line);
                if (complex_field ? !(entry >> re >> im) : !(entry >> re))
                    throw ParseError(name + ":" + std::to_string(lineno) +
                                     ": bad entry '" + line + "'");
                break;
            }
            m(i, j) = Complex(re, im);
        }
    }
    ensure_finite(m, name);
    return {std::move(m), name};
}

void write_matrix_market(std::ostream& out, const ComplexMatrix& m,
                         const std::string& comment) {
    out << "%%MatrixMarket matrix array complex general\n";
    if (!comment.empty()) out << "% " << comment << "\n";
    out << m.rows() << " " << m.cols() << "\n";
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            out << format_double(m(i, j).real()) << " " << format_double(m(i, j).imag())
                << "\n";
}

OperatorMatrix read_csv_matrix(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(name + ": empty file");
    std::size_t lineno = 1;
    if (line.empty() || line[0] != '#')
        throw ParseError(name + ":1: expected '# rows cols' header");
    std::istringstream header(line.substr(1));
    long long rows = 0, cols = 0;
    if (!(header >> rows >> cols) || rows <= 0 || cols <= 0)
        throw ParseError(name + ":1: bad '# rows cols' header '" + line + "'");

    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (!std::getline(in, line))
                throw ParseError(name + ": unexpected end of file at entry (" +
                                 std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            ++lineno;
            const auto comma = line.find(',');
            if (comma == std::string::npos)
                throw ParseError(name + ":" + std::to_string(lineno) +
                                 ": expected 're,im', got '" + line + "'");
            const double re =
                parse_number(std::string_view(line).substr(0, comma), name, lineno);
            const double im =
                parse_number(std::string_view(line).substr(comma + 1), name, lineno);
            m(i, j) = Complex(re, im);
        }
    }
    ensure_finite(m, name);
    return {std::move(m), name};
}

void write_csv_matrix(std::ostream& out, const ComplexMatrix& m) {
    out << "# " << m.rows() << " " << m.cols() << "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << format_double(m(i, j).real()) << "," << format_double(m(i, j).imag())
                << "\n";
}

OperatorMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    const int first = in.peek();
    OperatorMatrix m = (first == '%') ? read_matrix_market(in, path)
                                      : read_csv_matrix(in, path);
    m.label = path;
    return m;
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    if (path.size() > 4 && path.ends_with(".csv"))
        write_csv_matrix(out, m);
    else
        write_matrix_market(out, m);
}

void write_grid_csv(std::ostream& out, const PseudoGrid& grid) {
    out << "re,im,s_min,member\n";
    for (Eigen::Index iy = 0; iy < grid.resolution; ++iy) {
        for (Eigen::Index ix = 0; ix < grid.resolution; ++ix) {
            const Complex z = grid.node(ix, iy);
            const std::size_t idx = static_cast<std::size_t>(iy) * grid.resolution + ix;
            out << format_double(z.real()) << "," << format_double(z.imag()) << ","
                << format_double(grid.s_min[idx]) << ","
                << static_cast<int>(grid.member[idx]) << "\n";
        }
    }
}

}  // namespace specbound
