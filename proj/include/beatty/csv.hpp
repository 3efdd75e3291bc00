#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "beatty/errors.hpp"

namespace beatty {

// One certificate fact. `value` is the exact rendering (rationals as "p/q"),
// `value_decimal` a 12-digit decimal companion where that makes sense.
struct ReportRow {
  std::string family;
  std::string side;  // input | image | check
  std::string field;
  std::string value;
  std::string value_decimal;
  std::string params;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

inline constexpr std::string_view kReportHeader =
    "family,side,cert_field,value,value_decimal,params";

namespace detail {

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

inline auto row_key(const ReportRow& r) {
  return std::tie(r.family, r.side, r.field, r.value, r.params);
}

}  // namespace detail

// Deterministic CSV: header first, rows sorted by (family, side, field).
inline std::string emit_report(std::vector<ReportRow> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const ReportRow& a, const ReportRow& b) { return detail::row_key(a) < detail::row_key(b); });
  std::string out{kReportHeader};
  out += '\n';
  for (const ReportRow& r : rows) {
    out += detail::csv_escape(r.family);
    out += ',';
    out += detail::csv_escape(r.side);
    out += ',';
    out += detail::csv_escape(r.field);
    out += ',';
    out += detail::csv_escape(r.value);
    out += ',';
    out += detail::csv_escape(r.value_decimal);
    out += ',';
    out += detail::csv_escape(r.params);
    out += '\n';
  }
  return out;
}

// Round-trip reader for the artifact's own CSV output.
inline std::vector<ReportRow> parse_report(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  const auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
  };
  const auto end_record = [&] {
    end_field();
    if (record.size() != 6) throw ParseError("report row must have 6 columns");
    records.push_back(std::move(record));
    record.clear();
  };
  while (i < text.size()) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_record();
    } else if (c != '\r') {
      field += c;
    }
    ++i;
  }
  if (!field.empty() || !record.empty()) end_record();
  if (records.empty()) throw ParseError("report has no header");
  const auto& h = records.front();
  const std::string joined =
      h[0] + "," + h[1] + "," + h[2] + "," + h[3] + "," + h[4] + "," + h[5];
  if (joined != kReportHeader) throw ParseError("unexpected report header '" + joined + "'");
  std::vector<ReportRow> rows;
  rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    auto& rec = records[r];
    rows.push_back({std::move(rec[0]), std::move(rec[1]), std::move(rec[2]), std::move(rec[3]),
                    std::move(rec[4]), std::move(rec[5])});
  }
  return rows;
}

}  // namespace beatty
