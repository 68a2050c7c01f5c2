#include "vvcorr/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace vvcorr {

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string fmt_alpha(const Alpha& a) {
  return a.is_infinity() ? "inf" : fmt_double(a.value());
}

Alpha parse_alpha(const std::string& text) {
  if (text == "inf") return Alpha::infinity();
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::invalid_argument("alpha must be a decimal >= 1 or 'inf', got '" + text + "'");
  return Alpha(v);
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw std::invalid_argument("format must be csv or json, got '" + text + "'");
}

void ReportBuilder::add(const std::string& key, double value) {
  fields_.push_back({key, fmt_double(value), Kind::Number});
}

void ReportBuilder::add(const std::string& key, const std::string& value) {
  fields_.push_back({key, value, Kind::Text});
}

void ReportBuilder::add_count(const std::string& key, std::uint64_t value) {
  fields_.push_back({key, std::to_string(value), Kind::Number});
}

void ReportBuilder::add_flag(const std::string& key, bool value) {
  fields_.push_back({key, value ? "1" : "0", Kind::Number});
}

void ReportBuilder::set_table(std::vector<std::string> header,
                              std::vector<std::vector<std::string>> rows) {
  for (const auto& row : rows)
    if (row.size() != header.size())
      throw std::invalid_argument("ReportBuilder: row width != header width");
  table_header_ = std::move(header);
  table_rows_ = std::move(rows);
}

void ReportBuilder::set_records(const std::vector<TrialRecord>& records) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : records)
    rows.push_back({std::to_string(r.seed), std::to_string(r.trial), fmt_double(r.alpha),
                    std::to_string(r.k_or_ell), fmt_double(r.value), fmt_double(r.bound),
                    fmt_double(r.slack)});
  set_table({"seed", "trial", "alpha", "k_or_ell", "value", "bound", "slack"}, std::move(rows));
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

// Numeric cells are emitted as raw JSON tokens; inf/nan fall back to strings.
std::string json_number_token(const std::string& text) {
  if (text == "inf" || text == "-inf" || text == "nan") return json_escape(text);
  return text;
}

}  // namespace

std::string ReportBuilder::render(OutputFormat format) const {
  std::string out;
  if (format == OutputFormat::Csv) {
    out += "#schema=1\n";
    out += "key,value\n";
    for (const auto& f : fields_) out += f.key + "," + f.text + "\n";
    if (!table_header_.empty()) {
      out += "#records\n";
      for (std::size_t i = 0; i < table_header_.size(); ++i)
        out += (i ? "," : "") + table_header_[i];
      out += "\n";
      for (const auto& row : table_rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
        out += "\n";
      }
    }
    return out;
  }
  out += "{\"schema\":1,\"summary\":{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    const auto& f = fields_[i];
    out += (i ? "," : "") + json_escape(f.key) + ":";
    out += f.kind == Kind::Number ? json_number_token(f.text) : json_escape(f.text);
  }
  out += "}";
  if (!table_header_.empty()) {
    out += ",\"records\":[";
    for (std::size_t r = 0; r < table_rows_.size(); ++r) {
      out += r ? ",{" : "{";
      for (std::size_t i = 0; i < table_header_.size(); ++i) {
        out += (i ? "," : "") + json_escape(table_header_[i]) + ":";
        out += json_number_token(table_rows_[r][i]);
      }
      out += "}";
    }
    out += "]";
  }
  out += "}\n";
  return out;
}

}  // namespace vvcorr
