#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace potlab {

/// Shortest-exact decimal for a double (17 significant digits).
std::string format_double(double v);

/// CSV writer: optional "# key=value" provenance comment, then a header
/// row, then rows with 17-significant-digit decimals and UNIX newlines.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& provenance,
            const std::vector<std::string>& header);
  ~CsvWriter();
  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& values);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::string buffer_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// FNV-1a 64-bit, hex-encoded; used as the config hash in provenance lines.
std::string fnv1a_hex(const std::string& data);

inline constexpr const char* kPotlabVersion = "0.1.0";

}  // namespace potlab
