#ifndef BFT_OUTPUT_HPP
#define BFT_OUTPUT_HPP

#include "bft/config.hpp"

#include <string>
#include <vector>

namespace bft::out {

inline constexpr const char* kToolVersion = "0.1.0";

// 17 significant digits, '.' decimal point, no locale surprises: identical
// config + seed must give byte-identical files.
std::string format_double(double v);

// One "# ..." provenance line: config hash, tool version, truncation, quadrature.
std::string provenance_line(const RunConfig& cfg);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const RunConfig& cfg,
              const std::vector<std::string>& columns);
    ~CsvWriter();

    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::string buffer_;
    std::vector<std::string>::size_type ncols_;
};

void write_text_file(const std::string& path, const std::string& content);

} // namespace bft::out

#endif
