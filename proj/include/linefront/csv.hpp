#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "linefront/errors.hpp"
#include "linefront/version.hpp"

// CSV output: comma separated, '.' decimal point, one header row, metadata
// as '#'-prefixed lines. Numbers are printed with %.17g so that reruns with
// the same configuration reproduce the file byte for byte.

namespace linefront {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  /// Rows are buffered and written in one shot by write_to(), so a failed
  /// computation never leaves a partial file behind.
  CsvWriter() { meta("tool", std::string("linefront ") + kVersion); }

  void meta(const std::string& key, const std::string& value) {
    meta_ += "# " + key + " = " + value + "\n";
  }
  void meta(const std::string& key, double value) {
    meta(key, format_double(value));
  }

  void header(const std::vector<std::string>& columns) {
    header_.clear();
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) header_ += ',';
      header_ += columns[i];
    }
    header_ += '\n';
  }

  void row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) line += ',';
      line += format_double(values[i]);
    }
    line += '\n';
    body_ += line;
  }

  void raw_row(const std::string& line) { body_ += line + "\n"; }

  void write_to(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("CsvWriter: cannot open '" + path + "' for writing");
    out << meta_ << header_ << body_;
    if (!out) throw Error("CsvWriter: write to '" + path + "' failed");
  }

  std::string str() const { return meta_ + header_ + body_; }

 private:
  std::string meta_;
  std::string header_;
  std::string body_;
};

}  // namespace linefront
