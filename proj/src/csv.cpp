#include "nlslab/csv.hpp"

#include <cstdio>
#include <filesystem>

#include "nlslab/errors.hpp"

namespace nlslab {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    out_.open(path);
    if (!out_) throw ConfigError("cannot open output file: " + path);
    width_ = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        out_ << header[i] << (i + 1 < header.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_)
        throw ConfigError("csv row width mismatch writing " + path_);
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() = default;

void ensure_directory(const std::string& path) {
    std::filesystem::create_directories(path);
}

} // namespace nlslab
