#include "wreathwalk/csv.hpp"

#include <charconv>

#include "wreathwalk/errors.hpp"

namespace wreathwalk {

std::string csv_format(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_format(std::uint64_t v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_format(std::int64_t v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

CsvFile::CsvFile(const std::filesystem::path& path,
                 const std::vector<std::string>& header)
    : out_(path, std::ios::binary) {
  if (!out_) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  row(header);
}

void CsvFile::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace wreathwalk
