#pragma once

// Text and JSON serialization of complex numbers and verification reports.
// Needs nlohmann/json on the include path.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qdl/errors.hpp"
#include "qdl/numerics.hpp"
#include "qdl/verify.hpp"

namespace qdl {

/// "<re> <im>" with 17 significant digits; strtod reads it back bit for bit.
inline std::string format_complex(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g %.17g", z.real(), z.imag());
  return buf;
}

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  const std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Accepts the wire form "<re> <im>" and the algebraic forms "a", "bi",
/// "a+bi", "a-bi", "i", "-i" (j is accepted for i).
inline std::optional<cplx> parse_complex(std::string_view text) {
  const std::string_view s = detail::trim(text);
  if (s.empty()) return std::nullopt;
  if (const auto sp = s.find(' '); sp != std::string_view::npos) {
    const auto re = detail::parse_double(detail::trim(s.substr(0, sp)));
    const auto im = detail::parse_double(detail::trim(s.substr(sp + 1)));
    if (!re || !im) return std::nullopt;
    return cplx(*re, *im);
  }
  if (s.back() != 'i' && s.back() != 'j') {
    const auto re = detail::parse_double(s);
    if (!re) return std::nullopt;
    return cplx(*re, 0.0);
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = 0;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_part = body.substr(0, split);
  const std::string_view im_part = body.substr(split);
  double im = 0.0;
  if (im_part.empty() || im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else {
    const auto v = detail::parse_double(im_part);
    if (!v) return std::nullopt;
    im = *v;
  }
  double re = 0.0;
  if (!re_part.empty()) {
    const auto v = detail::parse_double(re_part);
    if (!v) return std::nullopt;
    re = *v;
  }
  return cplx(re, im);
}

/// Report as a JSON object. Non-finite numbers never reach the output: the
/// field becomes null and the report turns into a NonConvergent error record.
inline nlohmann::ordered_json to_json(const VerificationReport& r) {
  using nlohmann::ordered_json;
  bool non_finite = false;
  auto num = [&](double v) -> ordered_json {
    if (std::isfinite(v)) return v;
    non_finite = true;
    return nullptr;
  };
  auto cpx = [&](cplx z) -> ordered_json {
    if (is_finite(z)) return format_complex(z);
    non_finite = true;
    return nullptr;
  };
  ordered_json point = ordered_json::array();
  for (const Param& p : r.point) {
    ordered_json e;
    e["name"] = p.name;
    if (p.integer)
      e["value"] = static_cast<long long>(p.value.real());
    else
      e["value"] = cpx(p.value);
    point.push_back(std::move(e));
  }
  ordered_json j;
  j["identity"] = r.identity;
  j["group"] = r.group;
  j["dilog"] = r.dilog;
  j["point"] = std::move(point);
  j["lhs"] = cpx(r.lhs);
  j["rhs"] = cpx(r.rhs);
  j["abs_residual"] = num(r.abs_residual);
  j["rel_residual"] = num(r.rel_residual);
  j["tolerance"] = num(r.tolerance);
  j["nodes"] = r.nodes;
  j["terms"] = r.terms;
  bool passed = r.passed;
  std::optional<ErrorKind> error = r.error;
  std::string note = r.note;
  if (non_finite) {
    passed = false;
    if (!error) error = ErrorKind::NonConvergent;
    note = note.empty() ? "non-finite value" : note + "; non-finite value";
  }
  j["passed"] = passed;
  j["advisory"] = r.advisory;
  j["skipped"] = r.skipped;
  j["error"] = error ? ordered_json(std::string(to_string(*error))) : ordered_json(nullptr);
  j["note"] = note;
  return j;
}

inline nlohmann::ordered_json to_json(const SuiteSummary& s) {
  nlohmann::ordered_json inner;
  inner["total"] = s.total;
  inner["passed"] = s.passed;
  inner["failed"] = s.failed;
  inner["errors"] = s.errors;
  inner["advisory"] = s.advisory;
  inner["skipped"] = s.skipped;
  inner["all_passed"] = s.all_passed;
  nlohmann::ordered_json j;
  j["summary"] = std::move(inner);
  return j;
}

}  // namespace qdl
