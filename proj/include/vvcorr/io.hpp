#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vvcorr/alpha.hpp"
#include "vvcorr/binning.hpp"

namespace vvcorr {

// Shortest round-trip decimal text; specials render as inf/-inf/nan.
std::string fmt_double(double x);
std::string fmt_alpha(const Alpha& a);
// Accepts a decimal >= 1 or the literal "inf".
Alpha parse_alpha(const std::string& text);

enum class OutputFormat { Csv, Json };
// Accepts "csv" or "json".
OutputFormat parse_format(const std::string& text);

// Ordered key/value summary plus an optional row table, rendered as CSV with a
// versioned `#schema=1` header or as JSON carrying the same fields.
class ReportBuilder {
 public:
  void add(const std::string& key, double value);
  void add(const std::string& key, const std::string& value);
  void add_count(const std::string& key, std::uint64_t value);
  void add_flag(const std::string& key, bool value);
  void set_table(std::vector<std::string> header, std::vector<std::vector<std::string>> rows);
  void set_records(const std::vector<TrialRecord>& records);
  std::string render(OutputFormat format) const;

 private:
  enum class Kind { Number, Text };
  struct Field {
    std::string key;
    std::string text;
    Kind kind;
  };
  std::vector<Field> fields_;
  std::vector<std::string> table_header_;
  std::vector<std::vector<std::string>> table_rows_;
};

}  // namespace vvcorr
