#include "dgi/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dgi {

JsonValue JsonValue::object() {
  JsonValue v;
  v.type_ = Type::Object;
  return v;
}

JsonValue JsonValue::array() {
  JsonValue v;
  v.type_ = Type::Array;
  return v;
}

JsonValue JsonValue::number(double x) {
  JsonValue v;
  v.type_ = Type::Number;
  v.num_ = x;
  return v;
}

JsonValue JsonValue::integer(long long x) {
  JsonValue v;
  v.type_ = Type::Integer;
  v.int_ = x;
  return v;
}

JsonValue JsonValue::boolean(bool x) {
  JsonValue v;
  v.type_ = Type::Boolean;
  v.bool_ = x;
  return v;
}

JsonValue JsonValue::string(std::string x) {
  JsonValue v;
  v.type_ = Type::String;
  v.str_ = std::move(x);
  return v;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
  members_.emplace_back(key, std::move(v));
  return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
  items_.push_back(std::move(v));
  return *this;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

void newline_indent(std::string& out, int indent, int depth) {
  if (indent <= 0) return;
  out += '\n';
  out.append(static_cast<size_t>(indent) * depth, ' ');
}

}  // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
  switch (type_) {
    case Type::Number:
      if (std::isfinite(num_)) {
        out += format_real(num_);
      } else {
        out += "null";
      }
      break;
    case Type::Integer:
      out += std::to_string(int_);
      break;
    case Type::Boolean:
      out += bool_ ? "true" : "false";
      break;
    case Type::String:
      write_escaped(out, str_);
      break;
    case Type::Object: {
      if (members_.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : members_) {
        if (!first) out += ',';
        first = false;
        newline_indent(out, indent, depth + 1);
        write_escaped(out, k);
        out += indent > 0 ? ": " : ":";
        v.write(out, indent, depth + 1);
      }
      newline_indent(out, indent, depth);
      out += '}';
      break;
    }
    case Type::Array: {
      if (items_.empty()) {
        out += "[]";
        break;
      }
      // Arrays of scalars stay on one line; nested containers get split.
      bool scalar_only = true;
      for (const auto& v : items_)
        if (v.type_ == Type::Object || v.type_ == Type::Array) scalar_only = false;
      out += '[';
      bool first = true;
      for (const auto& v : items_) {
        if (!first) out += ',';
        if (!first && scalar_only && indent > 0) out += ' ';
        first = false;
        if (!scalar_only) newline_indent(out, indent, depth + 1);
        v.write(out, indent, depth + 1);
      }
      if (!scalar_only) newline_indent(out, indent, depth);
      out += ']';
      break;
    }
  }
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += '\n';
  return out;
}

JsonValue to_json(const RealMatrix& m) {
  JsonValue rows = JsonValue::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    JsonValue row = JsonValue::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push(JsonValue::number(m(i, j)));
    rows.push(std::move(row));
  }
  return rows;
}

JsonValue to_json(const DualMatrix& m) {
  JsonValue v = JsonValue::object();
  v.set("real", to_json(m.real));
  v.set("dual", to_json(m.dual));
  return v;
}

JsonValue to_json(const DualVector& v) {
  JsonValue out = JsonValue::object();
  RealMatrix re(v.size(), 1), du(v.size(), 1);
  re.col(0) = v.real;
  du.col(0) = v.dual;
  out.set("real", to_json(re));
  out.set("dual", to_json(du));
  return out;
}

JsonValue to_json(const ResidualReport& report) {
  JsonValue v = JsonValue::object();
  for (const auto& [name, value] : report.entries) v.set(name, JsonValue::number(value));
  return v;
}

JsonValue to_json(const InverseResult& result) {
  JsonValue v = JsonValue::object();
  v.set("kind", JsonValue::string(to_string(result.kind)));
  v.set("exists", JsonValue::boolean(result.exists));
  v.set("k", JsonValue::integer(result.k));
  if (result.inverse) v.set("inverse", to_json(*result.inverse));
  v.set("residuals", to_json(result.report));
  return v;
}

JsonValue to_json(const LawReport& report) {
  JsonValue v = JsonValue::object();
  JsonValue hyps = JsonValue::array();
  for (const auto& h : report.hypotheses) {
    JsonValue e = JsonValue::object();
    e.set("name", JsonValue::string(h.name));
    e.set("residual", JsonValue::number(h.residual));
    e.set("holds", JsonValue::boolean(h.holds));
    hyps.push(std::move(e));
  }
  v.set("hypotheses", std::move(hyps));
  v.set("forward_holds", JsonValue::boolean(report.forward_holds));
  v.set("reverse_holds", JsonValue::boolean(report.reverse_holds));
  JsonValue dists = JsonValue::object();
  for (const auto& [name, value] : report.distances) dists.set(name, JsonValue::number(value));
  v.set("distances", std::move(dists));
  return v;
}

JsonValue to_json(const Tolerances& tol) {
  JsonValue v = JsonValue::object();
  v.set("rank_rel", JsonValue::number(tol.rank_rel));
  v.set("resid_rel", JsonValue::number(tol.resid_rel));
  return v;
}

namespace {

RealMatrix parse_part(const nlohmann::json& rows, const char* field) {
  if (!rows.is_array() || rows.empty()) {
    throw ParseError(std::string("field '") + field + "' must be a nonempty array of rows");
  }
  const size_t nrows = rows.size();
  size_t ncols = 0;
  RealMatrix m;
  for (size_t i = 0; i < nrows; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.empty()) {
      throw ParseError(std::string("field '") + field + "': row " + std::to_string(i) +
                       " must be a nonempty array of numbers");
    }
    if (i == 0) {
      ncols = row.size();
      m.resize(nrows, ncols);
    } else if (row.size() != ncols) {
      throw ParseError(std::string("field '") + field + "': row " + std::to_string(i) +
                       " has " + std::to_string(row.size()) + " entries, expected " +
                       std::to_string(ncols));
    }
    for (size_t j = 0; j < ncols; ++j) {
      if (!row[j].is_number()) {
        throw ParseError(std::string("field '") + field + "': entry (" + std::to_string(i) +
                         "," + std::to_string(j) + ") is not a number");
      }
      const double x = row[j].get<double>();
      if (!std::isfinite(x)) {
        throw ParseError(std::string("field '") + field + "': entry (" + std::to_string(i) +
                         "," + std::to_string(j) + ") is not finite");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x;
    }
  }
  return m;
}

DualMatrix parse_document(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("real")) {
    throw ParseError("input document must be an object with a 'real' field");
  }
  RealMatrix real = parse_part(doc["real"], "real");
  RealMatrix dual;
  if (doc.contains("dual")) {
    dual = parse_part(doc["dual"], "dual");
    if (dual.rows() != real.rows() || dual.cols() != real.cols()) {
      throw ParseError("'dual' must have the same shape as 'real'");
    }
  } else {
    dual = RealMatrix::Zero(real.rows(), real.cols());
  }
  return DualMatrix(std::move(real), std::move(dual));
}

}  // namespace

DualMatrix parse_dual_matrix(const std::string& text) { return parse_document(text); }

DualVector parse_dual_vector(const std::string& text) {
  const DualMatrix m = parse_document(text);
  if (m.cols() != 1) {
    throw ParseError("a vector document must have single-column parts, got " +
                     std::to_string(m.cols()) + " columns");
  }
  return DualVector(m.real.col(0), m.dual.col(0));
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

DualMatrix read_dual_matrix_file(const std::string& path) {
  return parse_dual_matrix(read_file(path));
}

DualVector read_dual_vector_file(const std::string& path) {
  return parse_dual_vector(read_file(path));
}

}  // namespace dgi
