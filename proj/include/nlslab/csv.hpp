#pragma once
#include <fstream>
#include <string>
#include <vector>

namespace nlslab {

// %.17g round-trips doubles exactly, keeping output bit-stable across runs
std::string fmt17(double x);

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    ~CsvWriter();

  private:
    std::ofstream out_;
    std::size_t width_ = 0;
    std::string path_;
};

void ensure_directory(const std::string& path);

} // namespace nlslab
