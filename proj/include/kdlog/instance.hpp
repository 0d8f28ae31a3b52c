#pragma once

// JSON instance and secret files. Field elements are arrays of d residues,
// polynomials are arrays of field elements (low-to-high). Integers above
// 2^53 are written as decimal strings. Key order is fixed, so a fixed seed
// gives byte-identical files.

#include "kdlog/error.hpp"
#include "kdlog/exponent.hpp"
#include "kdlog/extfield.hpp"
#include "kdlog/ff.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kdlog {

using Json = nlohmann::ordered_json;

enum class Kind { kummer, artin_schreier };

inline std::string to_string(Kind k) { return k == Kind::kummer ? "kummer" : "artin_schreier"; }

inline Kind parse_kind(const std::string& s) {
  if (s == "kummer") return Kind::kummer;
  if (s == "artin_schreier") return Kind::artin_schreier;
  throw Error(ErrorCode::ParseError, "unknown kind '" + s + "'");
}

using Residues = std::vector<std::uint32_t>;

struct InstanceFile {
  Kind kind = Kind::kummer;
  std::uint64_t p = 0;
  std::size_t d = 1;
  Residues base_modulus;  // d + 1 entries when d > 1
  std::size_t n = 0;      // Kummer only
  Residues a, b;
  std::vector<Residues> target;
};

struct SecretFile {
  std::vector<std::uint64_t> digits;
  std::uint64_t sum = 0;
};

using AnyContext = std::variant<KummerContext, ASContext>;

namespace detail {

constexpr std::uint64_t kMaxExactJson = std::uint64_t{1} << 53;

inline Json json_uint(std::uint64_t v) { return v > kMaxExactJson ? Json(std::to_string(v)) : Json(v); }

inline std::uint64_t parse_uint(const Json& j, const char* what) {
  try {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_string()) {
      const auto s = j.get<std::string>();
      std::size_t used = 0;
      const auto v = std::stoull(s, &used);
      if (used == s.size() && !s.empty() && s[0] != '-') return v;
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ParseError, std::string(what) + " must be a nonnegative integer");
}

inline const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Residues parse_residues(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array");
  Residues out;
  for (const auto& v : j) {
    const auto x = parse_uint(v, what);
    if (x > UINT32_MAX) throw Error(ErrorCode::ParseError, std::string(what) + " entry out of range");
    out.push_back(static_cast<std::uint32_t>(x));
  }
  return out;
}

}  // namespace detail

inline Json to_json(const InstanceFile& f) {
  Json j;
  j["kind"] = to_string(f.kind);
  j["p"] = detail::json_uint(f.p);
  j["d"] = f.d;
  if (f.d > 1) j["base_modulus"] = f.base_modulus;
  if (f.kind == Kind::kummer) j["n"] = f.n;
  j["a"] = f.a;
  j["b"] = f.b;
  j["target"] = f.target;
  return j;
}

inline InstanceFile instance_from_json(const Json& j) {
  InstanceFile f;
  f.kind = parse_kind(detail::field_of(j, "kind").is_string() ? detail::field_of(j, "kind").get<std::string>() : "");
  f.p = detail::parse_uint(detail::field_of(j, "p"), "p");
  f.d = j.contains("d") ? detail::parse_uint(j.at("d"), "d") : 1;
  if (f.d > 1) f.base_modulus = detail::parse_residues(detail::field_of(j, "base_modulus"), "base_modulus");
  if (f.kind == Kind::kummer) f.n = detail::parse_uint(detail::field_of(j, "n"), "n");
  f.a = detail::parse_residues(detail::field_of(j, "a"), "a");
  f.b = detail::parse_residues(detail::field_of(j, "b"), "b");
  const Json& t = detail::field_of(j, "target");
  if (!t.is_array()) throw Error(ErrorCode::ParseError, "target must be an array of field elements");
  for (const auto& c : t) f.target.push_back(detail::parse_residues(c, "target coefficient"));
  return f;
}

inline Json to_json(const SecretFile& s) {
  Json j;
  Json ds = Json::array();
  for (auto d : s.digits) ds.push_back(detail::json_uint(d));
  j["digits"] = ds;
  j["sum"] = detail::json_uint(s.sum);
  return j;
}

inline SecretFile secret_from_json(const Json& j) {
  SecretFile s;
  const Json& ds = detail::field_of(j, "digits");
  if (!ds.is_array()) throw Error(ErrorCode::ParseError, "digits must be an array");
  for (const auto& d : ds) s.digits.push_back(detail::parse_uint(d, "digit"));
  s.sum = detail::parse_uint(detail::field_of(j, "sum"), "sum");
  return s;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// The ground field an instance file describes.
inline Field instance_field(const InstanceFile& f) {
  if (f.d <= 1) return Field::prime(f.p);
  return Field::build(f.p, f.d, f.base_modulus);
}

inline AnyContext build_context(const InstanceFile& f) {
  const Field base = instance_field(f);
  if (f.kind == Kind::kummer) return KummerContext::build(base, f.n, base.element(f.a), base.element(f.b));
  if (f.d != 1) throw Error(ErrorCode::DegreeMismatch, "Artin-Schreier instances live over a prime field");
  return ASContext::build(f.p, base.element(f.a), base.element(f.b));
}

inline ExtElement target_of(const ExtensionField& ctx, const InstanceFile& f) {
  if (f.target.size() > ctx.degree()) throw Error(ErrorCode::ParseError, "target degree must be below the extension degree");
  std::vector<FieldElement> cs;
  for (const auto& c : f.target) cs.push_back(ctx.base().element(c));
  return ctx.element(BasePoly(std::move(cs)));
}

inline InstanceFile describe(const KummerContext& ctx, const ExtElement& target) {
  const Field& base = ctx.base();
  InstanceFile f;
  f.kind = Kind::kummer;
  f.p = base.p();
  f.d = base.degree();
  if (f.d > 1) f.base_modulus = base.modulus();
  f.n = ctx.n();
  f.a = base.to_coeffs(ctx.a());
  f.b = base.to_coeffs(ctx.b());
  for (const auto& c : target.repr.coeffs()) f.target.push_back(base.to_coeffs(c));
  return f;
}

inline InstanceFile describe(const ASContext& ctx, const ExtElement& target) {
  const Field& base = ctx.base();
  InstanceFile f;
  f.kind = Kind::artin_schreier;
  f.p = base.p();
  f.d = 1;
  f.a = base.to_coeffs(ctx.a());
  f.b = base.to_coeffs(ctx.b());
  for (const auto& c : target.repr.coeffs()) f.target.push_back(base.to_coeffs(c));
  return f;
}

inline SecretFile describe(const ExponentDigits& e) { return {e.digits, e.sum()}; }

}  // namespace kdlog
