#ifndef CAVSCAT_CSV_HPP
#define CAVSCAT_CSV_HPP

// Byte-stable CSV emission: scientific notation with 9 significant
// digits, locale-independent, LF line endings.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cavscat {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8e", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot open output file: " + path);
    for (size_t i = 0; i < header.size(); ++i) {
      if (i) out_ << ',';
      out_ << header[i];
    }
    out_ << '\n';
  }

  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  void close() {
    out_.close();
    if (!out_) throw IoError("write failure on CSV output");
  }

 private:
  std::ofstream out_;
};

}  // namespace cavscat

#endif
