#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace wreathwalk {

// Shortest round-trip decimal form via to_chars: locale-free and
// byte-reproducible across runs.
std::string csv_format(double v);
std::string csv_format(std::uint64_t v);
std::string csv_format(std::int64_t v);
inline std::string csv_format(const std::string& s) { return s; }

// UTF-8, header row, '.' decimal separator, '\n' line ends.
class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& cells);

  template <class... Ts>
  void typed_row(const Ts&... cells) {
    row(std::vector<std::string>{csv_format(cells)...});
  }

 private:
  std::ofstream out_;
};

}  // namespace wreathwalk
