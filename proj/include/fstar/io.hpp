#pragma once

// CSV field export/import and JSON reports. CSV: header row, '.' decimal
// separator, '\n' line endings. JSON: UTF-8, fixed key order, numbers with 17
// significant digits.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fstar/deformation.hpp"
#include "fstar/field.hpp"
#include "fstar/genvalue.hpp"

namespace fstar {

/// "%.17g", with non-finite values spelled as JSON-safe strings by the caller.
std::string format_double(double v);

void write_field_csv(std::ostream& out, const Field& field);
/// Reads "q,p,re,im" rows back onto `grid`; coordinates must match the grid to 1e-12.
Field read_field_csv(std::istream& in, const PhaseGrid& grid, std::string label = {});

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows);
void write_assoc_csv(std::ostream& out, const AssociativityResult& result);

/// Minimal streaming JSON writer preserving insertion order.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();

  /// Two-space indented text with a trailing newline.
  std::string str() const { return out_ + "\n"; }

 private:
  void before_value();
  JsonWriter& close(char bracket);
  void newline();

  std::string out_;
  std::vector<bool> first_;  // per open container: no element written yet
  bool after_key_ = false;
};

void write_grid_json(JsonWriter& json, const PhaseGrid& grid);
void write_report_json(JsonWriter& json, const ResidualReport& report);
std::string report_json(const ResidualReport& report);

/// {grid, label, stats: {min_re, max_re, max_abs_im, integral_re, integral_im}}
std::string field_summary_json(const Field& field);

}  // namespace fstar
