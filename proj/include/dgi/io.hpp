#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dgi/dual_inverses.hpp"
#include "dgi/order_laws.hpp"

namespace dgi {

/// Deterministic JSON document builder: keys keep insertion order and every
/// number is written with 17 significant digits, so identical inputs yield
/// byte-identical reports that re-parse exactly.
class JsonValue {
 public:
  static JsonValue object();
  static JsonValue array();
  static JsonValue number(double v);
  static JsonValue integer(long long v);
  static JsonValue boolean(bool v);
  static JsonValue string(std::string v);

  JsonValue& set(const std::string& key, JsonValue v);  // objects
  JsonValue& push(JsonValue v);                         // arrays

  std::string dump(int indent = 2) const;

 private:
  enum class Type { Object, Array, Number, Integer, Boolean, String };
  Type type_ = Type::Object;
  double num_ = 0.0;
  long long int_ = 0;
  bool bool_ = false;
  std::string str_;
  std::vector<std::pair<std::string, JsonValue>> members_;
  std::vector<JsonValue> items_;

  void write(std::string& out, int indent, int depth) const;
};

/// 17-significant-digit decimal form of v (round-trips any double).
std::string format_real(double v);

JsonValue to_json(const RealMatrix& m);
JsonValue to_json(const DualMatrix& m);
JsonValue to_json(const DualVector& v);
JsonValue to_json(const ResidualReport& report);
JsonValue to_json(const InverseResult& result);
JsonValue to_json(const LawReport& report);
JsonValue to_json(const Tolerances& tol);

/// Input document: field "real" is an array of number rows; the optional
/// field "dual" has the same shape and defaults to zero. Vectors are
/// single-column matrices. Throws ParseError on malformed input, wrong
/// shapes, or non-finite entries.
DualMatrix parse_dual_matrix(const std::string& text);
DualVector parse_dual_vector(const std::string& text);

DualMatrix read_dual_matrix_file(const std::string& path);
DualVector read_dual_vector_file(const std::string& path);

}  // namespace dgi
