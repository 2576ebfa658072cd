#pragma once

// JSON and CSV serialization for evaluation results and verification records.
// JSON output is one object per line so streams can be processed with line
// tools; the CSV schema is fixed so downstream scripts can rely on it.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "charsum/algebraic.hpp"
#include "charsum/verify.hpp"

namespace charsum::io {

[[nodiscard]] inline SumMethod method_from_string(const std::string& s) {
  if (s == "brute") return SumMethod::brute;
  if (s == "gauss-closed") return SumMethod::gauss_closed;
  if (s == "jacobi-closed") return SumMethod::jacobi_closed;
  if (s == "gauss-quotient") return SumMethod::gauss_quotient;
  if (s == "direct-k2") return SumMethod::direct_k2;
  throw std::invalid_argument("unknown method name: " + s);
}

[[nodiscard]] inline nlohmann::json to_json(const SumResult& r) {
  nlohmann::json j;
  if (r.exact) {
    j["zero"] = r.value.is_zero;
    j["p"] = r.value.base;
    j["half_exp"] = r.value.half_exp;
    j["scale"] = r.value.scale;
    j["phase_num"] = r.value.phase.num;
    j["phase_den"] = r.value.phase.den;
  } else {
    j["zero"] = false;
    j["p"] = nullptr;
    j["half_exp"] = nullptr;
    j["scale"] = nullptr;
    j["phase_num"] = nullptr;
    j["phase_den"] = nullptr;
  }
  j["re"] = r.approx.real();
  j["im"] = r.approx.imag();
  j["method"] = to_string(r.method);
  j["exact"] = r.exact;
  j["terms"] = r.terms;
  j["notes"] = r.notes;
  return j;
}

[[nodiscard]] inline SumResult sum_result_from_json(const nlohmann::json& j) {
  SumResult r;
  r.exact = j.at("exact").get<bool>();
  r.method = method_from_string(j.at("method").get<std::string>());
  r.terms = j.value("terms", uint64_t{0});
  r.notes = j.value("notes", std::string{});
  r.approx = {j.at("re").get<double>(), j.at("im").get<double>()};
  if (r.exact) {
    const int64_t p = j.at("p").get<int64_t>();
    if (j.at("zero").get<bool>()) {
      r.value = ExactValue::zero(p);
    } else {
      r.value = ExactValue::make(
          p, j.at("half_exp").get<int64_t>(),
          Rotation::of(j.at("phase_num").get<int64_t>(), j.at("phase_den").get<int64_t>()),
          j.at("scale").get<int64_t>());
    }
  }
  return r;
}

[[nodiscard]] inline nlohmann::json to_json(const verify::DiscrepancyRecord& rec) {
  nlohmann::json j;
  j["suite"] = rec.suite;
  j["p"] = rec.p;
  j["m"] = rec.m;
  j["k"] = rec.k;
  j["n"] = rec.n;
  j["B"] = rec.B;
  j["c_tuple"] = rec.c_tuple;
  j["e_tuple"] = rec.e_tuple;
  j["method_a"] = rec.method_a;
  j["method_b"] = rec.method_b;
  j["re_a"] = rec.value_a.real();
  j["im_a"] = rec.value_a.imag();
  j["re_b"] = rec.value_b.real();
  j["im_b"] = rec.value_b.imag();
  j["deviation"] = rec.deviation;
  j["status"] = verify::to_string(rec.status);
  return j;
}

[[nodiscard]] inline std::string csv_header() {
  return "p,m,k,n,B,c_tuple,e_tuple,method_a,method_b,re_a,im_a,re_b,im_b,deviation,status";
}

namespace detail {

[[nodiscard]] inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

[[nodiscard]] inline std::string join_tuple(const std::vector<int64_t>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += '|';
    out += std::to_string(v[i]);
  }
  return out;
}

[[nodiscard]] inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

[[nodiscard]] inline std::string to_csv_row(const verify::DiscrepancyRecord& rec) {
  std::string out;
  out += std::to_string(rec.p);
  out += ',';
  out += std::to_string(rec.m);
  out += ',';
  out += std::to_string(rec.k);
  out += ',';
  out += std::to_string(rec.n);
  out += ',';
  out += std::to_string(rec.B);
  out += ',';
  out += detail::join_tuple(rec.c_tuple);
  out += ',';
  out += detail::join_tuple(rec.e_tuple);
  out += ',';
  out += detail::csv_escape(rec.method_a);
  out += ',';
  out += detail::csv_escape(rec.method_b);
  out += ',';
  out += detail::format_double(rec.value_a.real());
  out += ',';
  out += detail::format_double(rec.value_a.imag());
  out += ',';
  out += detail::format_double(rec.value_b.real());
  out += ',';
  out += detail::format_double(rec.value_b.imag());
  out += ',';
  out += detail::format_double(rec.deviation);
  out += ',';
  out += verify::to_string(rec.status);
  return out;
}

enum class RecordFormat { json, csv };

inline void write_records(std::ostream& os, const std::vector<verify::DiscrepancyRecord>& recs,
                          RecordFormat format) {
  if (format == RecordFormat::csv) {
    os << csv_header() << '\n';
    for (const verify::DiscrepancyRecord& rec : recs) os << to_csv_row(rec) << '\n';
  } else {
    for (const verify::DiscrepancyRecord& rec : recs) os << to_json(rec).dump() << '\n';
  }
}

}  // namespace charsum::io
