#include "bft/output.hpp"

#include "bft/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bft::out {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string provenance_line(const RunConfig& cfg) {
    std::ostringstream os;
    os << "# config_hash=" << cfg.config_hash << " tool_version=" << kToolVersion
       << " theta_max=" << format_double(0.5 * cfg.dispersion->domain().width())
       << " rel_tol=" << format_double(cfg.quadrature.rel_tol)
       << " panel_points=" << cfg.quadrature.panel_points << " seed=" << cfg.seed;
    return os.str();
}

CsvWriter::CsvWriter(const std::string& path, const RunConfig& cfg,
                     const std::vector<std::string>& columns)
    : path_(path), ncols_(columns.size()) {
    buffer_ += provenance_line(cfg);
    buffer_ += '\n';
    for (size_t i = 0; i < columns.size(); ++i) {
        buffer_ += columns[i];
        if (i + 1 < columns.size()) buffer_ += ',';
    }
    buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != ncols_) throw DomainError("CSV row width mismatch: " + path_);
    for (size_t i = 0; i < values.size(); ++i) {
        buffer_ += format_double(values[i]);
        if (i + 1 < values.size()) buffer_ += ',';
    }
    buffer_ += '\n';
}

void CsvWriter::raw_row(const std::string& line) {
    buffer_ += line;
    buffer_ += '\n';
}

CsvWriter::~CsvWriter() {
    try {
        write_text_file(path_, buffer_);
    } catch (...) {
        // Destructor must not throw; the file is simply not written.
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open for writing: " + path);
    out << content;
    if (!out) throw DomainError("write failure: " + path);
}

} // namespace bft::out
