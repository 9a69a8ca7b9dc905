#include "fstar/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fstar/errors.hpp"
#include "fstar/phasespace.hpp"

namespace fstar {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(std::ostream& out, const Field& field) {
  const PhaseGrid& g = field.grid();
  out << "q,p,re,im\n";
  for (int i = 0; i < g.n_q; ++i) {
    const std::string q = format_double(g.q(i));
    for (int j = 0; j < g.n_p; ++j) {
      const Complex v = field.at(i, j);
      out << q << ',' << format_double(g.p(j)) << ',' << format_double(v.real()) << ','
          << format_double(v.imag()) << '\n';
    }
  }
}

Field read_field_csv(std::istream& in, const PhaseGrid& grid, std::string label) {
  std::string line;
  if (!std::getline(in, line) || line != "q,p,re,im") throw ParseError("missing CSV header 'q,p,re,im'", 0);
  std::vector<Complex> values;
  values.reserve(grid.size());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double cols[4];
    std::istringstream fields(line);
    std::string cell;
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(fields, cell, ',')) throw ParseError("CSV row " + std::to_string(row + 2) + " has fewer than 4 columns", 0);
      try {
        std::size_t used = 0;
        cols[c] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ParseError("malformed number '" + cell + "' in CSV row " + std::to_string(row + 2), 0);
      }
    }
    if (row >= grid.size()) throw ParseError("CSV has more rows than the grid", 0);
    const int i = static_cast<int>(row / static_cast<std::size_t>(grid.n_p));
    const int j = static_cast<int>(row % static_cast<std::size_t>(grid.n_p));
    if (std::abs(cols[0] - grid.q(i)) > 1e-12 || std::abs(cols[1] - grid.p(j)) > 1e-12) {
      throw ParseError("CSV row " + std::to_string(row + 2) + " does not match the grid coordinates", 0);
    }
    values.emplace_back(cols[2], cols[3]);
    ++row;
  }
  if (row != grid.size()) throw ParseError("CSV has " + std::to_string(row) + " rows, grid needs " + std::to_string(grid.size()), 0);
  return Field(grid, std::move(values), std::move(label));
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows) {
  out << "n,energy\n";
  for (const auto& r : rows) out << r.n << ',' << format_double(r.energy) << '\n';
}

void write_assoc_csv(std::ostream& out, const AssociativityResult& result) {
  out << "hbar,defect,slope\n";
  const std::string slope = result.slope ? format_double(*result.slope) : std::string("exact_zero");
  for (const auto& r : result.rows) out << format_double(r.hbar) << ',' << format_double(r.defect) << ',' << slope << '\n';
}

void JsonWriter::newline() {
  out_ += '\n';
  out_.append(first_.size() * 2, ' ');
}

void JsonWriter::before_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) out_ += ',';
    first_.back() = false;
    newline();
  }
}

JsonWriter& JsonWriter::begin_object() {
  before_value();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::close(char bracket) {
  const bool empty = first_.back();
  first_.pop_back();
  if (!empty) newline();
  out_ += bracket;
  return *this;
}

JsonWriter& JsonWriter::end_object() { return close('}'); }

JsonWriter& JsonWriter::begin_array() {
  before_value();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() { return close(']'); }

JsonWriter& JsonWriter::key(std::string_view k) {
  before_value();
  out_ += nlohmann::json(std::string(k)).dump();
  out_ += ": ";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  before_value();
  if (std::isfinite(v)) {
    out_ += format_double(v);
  } else {
    out_ += std::isnan(v) ? "\"nan\"" : (v > 0 ? "\"inf\"" : "\"-inf\"");
  }
  return *this;
}

JsonWriter& JsonWriter::value(int v) {
  before_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  before_value();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  before_value();
  out_ += nlohmann::json(std::string(v)).dump();
  return *this;
}

JsonWriter& JsonWriter::null() {
  before_value();
  out_ += "null";
  return *this;
}

void write_grid_json(JsonWriter& json, const PhaseGrid& grid) {
  json.begin_object()
      .key("q_min").value(grid.q_min)
      .key("q_max").value(grid.q_max)
      .key("p_min").value(grid.p_min)
      .key("p_max").value(grid.p_max)
      .key("n_q").value(grid.n_q)
      .key("n_p").value(grid.n_p)
      .key("hbar").value(grid.hbar)
      .key("offset").value(grid.offset)
      .end_object();
}

void write_report_json(JsonWriter& json, const ResidualReport& report) {
  json.begin_object()
      .key("identity").value(report.identity_name)
      .key("spec").value(report.spec)
      .key("n");
  if (report.n >= 0) {
    json.value(report.n);
  } else {
    json.null();
  }
  json.key("hbar").value(report.hbar)
      .key("omega").value(report.omega)
      .key("order").value(to_string(report.order))
      .key("max_abs").value(report.max_abs)
      .key("l2").value(report.l2)
      .key("imag_max").value(report.imag_max)
      .key("witness").begin_object()
      .key("q").value(report.witness.q)
      .key("p").value(report.witness.p)
      .key("re").value(report.witness.value.real())
      .key("im").value(report.witness.value.imag())
      .end_object()
      .key("grid");
  write_grid_json(json, report.grid);
  json.key("extras").begin_object();
  for (const auto& [k, v] : report.extras) json.key(k).value(v);
  json.end_object().end_object();
}

std::string report_json(const ResidualReport& report) {
  JsonWriter json;
  write_report_json(json, report);
  return json.str();
}

std::string field_summary_json(const Field& field) {
  double min_re = std::numeric_limits<double>::infinity();
  double max_re = -std::numeric_limits<double>::infinity();
  double max_im = 0.0;
  for (const Complex& v : field.values()) {
    min_re = std::min(min_re, v.real());
    max_re = std::max(max_re, v.real());
    max_im = std::max(max_im, std::abs(v.imag()));
  }
  const Complex total = integrate(field);
  JsonWriter json;
  json.begin_object().key("grid");
  write_grid_json(json, field.grid());
  json.key("label").value(field.label())
      .key("stats").begin_object()
      .key("min_re").value(min_re)
      .key("max_re").value(max_re)
      .key("max_abs_im").value(max_im)
      .key("integral_re").value(total.real())
      .key("integral_im").value(total.imag())
      .end_object()
      .end_object();
  return json.str();
}

}  // namespace fstar
