#include "kreinrel/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <regex>
#include <sstream>

namespace kreinrel {

namespace {

using json = nlohmann::ordered_json;

struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
};

Location locate(const std::string& text, std::size_t offset) {
  Location loc;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

// Reports semantic errors at the first occurrence of the key path in the source text.
class Context {
 public:
  Context(const std::string& text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  [[noreturn]] void fail(std::initializer_list<const char*> path, const std::string& message) const {
    std::size_t pos = 0;
    for (const char* key : path) {
      const std::size_t hit = text_.find(std::string("\"") + key + "\"", pos);
      if (hit == std::string::npos) break;
      pos = hit;
    }
    const Location loc = locate(text_, pos);
    throw Error(ErrorKind::input,
                origin_ + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message);
  }

  const std::string& origin() const { return origin_; }

 private:
  const std::string& text_;
  std::string origin_;
};

cplx read_scalar(const json& v, const Context& ctx, std::initializer_list<const char*> path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  ctx.fail(path, "expected a complex number [re, im]");
}

Matrix read_matrix(const json& v, const Context& ctx, std::initializer_list<const char*> path) {
  if (!v.is_array()) ctx.fail(path, "expected a matrix as nested arrays");
  const Index rows = static_cast<Index>(v.size());
  if (rows == 0) return Matrix(0, 0);
  if (!v[0].is_array()) ctx.fail(path, "expected a matrix as nested arrays");
  const Index cols = static_cast<Index>(v[0].size());
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = v[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      ctx.fail(path, "row " + std::to_string(r) + " has a different length than row 0");
    }
    for (Index c = 0; c < cols; ++c) m(r, c) = read_scalar(row[static_cast<std::size_t>(c)], ctx, path);
  }
  if (!m.allFinite()) ctx.fail(path, "matrix has non-finite entries");
  return m;
}

// A list of vectors of length n, returned as the columns of an n × k matrix.
Matrix read_vectors(const json& v, Index n, const Context& ctx, std::initializer_list<const char*> path) {
  if (!v.is_array()) ctx.fail(path, "expected a list of vectors");
  Matrix m(n, static_cast<Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    const json& vec = v[k];
    if (!vec.is_array() || static_cast<Index>(vec.size()) != n) {
      ctx.fail(path, "vector " + std::to_string(k) + " should have " + std::to_string(n) + " entries");
    }
    for (Index r = 0; r < n; ++r) m(r, static_cast<Index>(k)) = read_scalar(vec[static_cast<std::size_t>(r)], ctx, path);
  }
  if (!m.allFinite()) ctx.fail(path, "vectors have non-finite entries");
  return m;
}

Index read_count(const json& obj, const char* key, const Context& ctx, std::initializer_list<const char*> path) {
  if (!obj.contains(key)) ctx.fail(path, std::string("missing field \"") + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) ctx.fail(path, std::string("\"") + key + "\" must be a count");
  return static_cast<Index>(v.get<long long>());
}

double clean(double x, bool rounded) {
  const double r = rounded ? std::round(x * 1e12) / 1e12 : x;
  return r == 0.0 ? 0.0 : r;
}

json scalar_value(cplx z, const JsonStyle& style) {
  return json::array({clean(z.real(), style.rounded), clean(z.imag(), style.rounded)});
}

json matrix_value(const Matrix& m, const JsonStyle& style) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(scalar_value(m(r, c), style));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vectors_value(const Matrix& columns, const JsonStyle& style) {
  json list = json::array();
  for (Index c = 0; c < columns.cols(); ++c) {
    json vec = json::array();
    for (Index r = 0; r < columns.rows(); ++r) vec.push_back(scalar_value(columns(r, c), style));
    list.push_back(std::move(vec));
  }
  return list;
}

json space_value(const KreinSpace& space, const JsonStyle& style) {
  json s;
  s["dim"] = space.dim();
  s["J"] = matrix_value(space.J(), style);
  return s;
}

json relation_value(const LinearRelation& t, const JsonStyle& style) {
  json r;
  r["graph"] = vectors_value(style.echelon ? echelon_basis(t.graph()) : t.graph().frame(), style);
  return r;
}

json triple_value(const BoundaryTriple& triple, const JsonStyle& style) {
  json t;
  t["boundary_dim"] = triple.boundary_dim();
  t["gamma"] = matrix_value(triple.gamma(), style);
  t["tplus"] = vectors_value(triple.basis(), style);
  return t;
}

bool flat(const json& v) {
  if (!v.is_array()) return !v.is_object();
  return std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
}

// Arrays of scalars, and arrays of such arrays, stay on one line; everything else is indented.
void write(std::ostringstream& out, const json& v, int indent, int depth) {
  const bool inline_array = v.is_array() && (flat(v) || std::all_of(v.begin(), v.end(), [](const json& e) {
                              return e.is_array() && flat(e);
                            }));
  if (v.is_primitive() || v.empty() || inline_array) {
    if (!v.is_array() || v.empty()) {
      out << v.dump();
      return;
    }
    out << "[";
    for (std::size_t k = 0; k < v.size(); ++k) {
      out << (k ? ", " : "");
      write(out, v[k], indent, depth + 1);
    }
    out << "]";
    return;
  }
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  out << (v.is_array() ? "[" : "{") << "\n";
  std::size_t k = 0;
  for (auto it = v.begin(); it != v.end(); ++it, ++k) {
    out << pad;
    if (v.is_object()) out << json(it.key()).dump() << ": ";
    write(out, *it, indent, depth + 1);
    out << (k + 1 < v.size() ? "," : "") << "\n";
  }
  out << close << (v.is_array() ? "]" : "}");
}

std::string render(const json& v, const JsonStyle& style) {
  std::ostringstream out;
  write(out, v, style.indent, 0);
  out << "\n";
  return out.str();
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const Location loc = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    const std::size_t cut = what.find("parse error");
    if (cut != std::string::npos) what = what.substr(cut);
    throw Error(ErrorKind::input,
                origin + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + what);
  }
}

}  // namespace

Document parse_document(const std::string& text, const std::string& origin) {
  const Context ctx(text, origin);
  const json root = parse_json(text, origin);
  if (!root.is_object()) ctx.fail({}, "top level must be an object");

  Document doc;
  if (!root.contains("space")) ctx.fail({}, "missing field \"space\"");
  const json& s = root.at("space");
  if (!s.is_object()) ctx.fail({"space"}, "\"space\" must be an object");
  const Index dim = read_count(s, "dim", ctx, {"space"});
  if (!s.contains("J")) ctx.fail({"space"}, "missing field \"J\"");
  const Matrix j = read_matrix(s.at("J"), ctx, {"space", "J"});
  if (j.rows() != dim || j.cols() != dim) {
    ctx.fail({"space", "J"}, "J must be " + std::to_string(dim) + " x " + std::to_string(dim));
  }
  try {
    doc.space = make_krein(j);
  } catch (const Error& e) {
    ctx.fail({"space", "J"}, e.what());
  }

  if (root.contains("relation")) {
    const json& r = root.at("relation");
    if (!r.is_object() || !r.contains("graph")) ctx.fail({"relation"}, "\"relation\" needs a \"graph\" list");
    const Matrix g = read_vectors(r.at("graph"), 2 * dim, ctx, {"relation", "graph"});
    doc.relation = from_pairs(g.topRows(dim), g.bottomRows(dim), *doc.space, *doc.space);
  }

  if (root.contains("triple")) {
    const json& t = root.at("triple");
    if (!doc.relation) ctx.fail({"triple"}, "a triple needs the symmetric relation in \"relation\"");
    if (!t.is_object()) ctx.fail({"triple"}, "\"triple\" must be an object");
    const Index d = read_count(t, "boundary_dim", ctx, {"triple"});
    if (!t.contains("gamma") || !t.contains("tplus")) ctx.fail({"triple"}, "\"triple\" needs \"gamma\" and \"tplus\"");
    const Matrix basis = read_vectors(t.at("tplus"), 2 * dim, ctx, {"triple", "tplus"});
    const Matrix gamma = read_matrix(t.at("gamma"), ctx, {"triple", "gamma"});
    if (gamma.rows() != 2 * d || gamma.cols() != basis.cols()) {
      ctx.fail({"triple", "gamma"}, "gamma must be " + std::to_string(2 * d) + " x " + std::to_string(basis.cols()));
    }
    try {
      doc.triple = validate_triple(*doc.relation, gamma, basis);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::dimension_mismatch) throw;
      ctx.fail({"triple"}, e.what());
    }
  }
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Document load_document(const std::string& path) { return parse_document(read_file(path), path); }

Matrix parse_matrix(const std::string& text, const std::string& origin) {
  const Context ctx(text, origin);
  return read_matrix(parse_json(text, origin), ctx, {});
}

std::vector<cplx> parse_points(const std::string& text, const std::string& origin) {
  const Context ctx(text, origin);
  const json v = parse_json(text, origin);
  if (!v.is_array()) ctx.fail({}, "expected a list of complex numbers");
  std::vector<cplx> out;
  for (const json& z : v) out.push_back(read_scalar(z, ctx, {}));
  return out;
}

std::string dump_document(const Document& doc, const JsonStyle& style) {
  json root;
  if (doc.space) root["space"] = space_value(*doc.space, style);
  if (doc.relation) root["relation"] = relation_value(*doc.relation, style);
  if (doc.triple) root["triple"] = triple_value(*doc.triple, style);
  return render(root, style);
}

std::string space_json(const KreinSpace& space, const JsonStyle& style) {
  return render(space_value(space, style), style);
}

std::string relation_json(const LinearRelation& t, const JsonStyle& style) {
  return dump_document(Document{t.src(), t, std::nullopt}, style);
}

std::string triple_json(const BoundaryTriple& triple, const JsonStyle& style) {
  return dump_document(Document{triple.space(), triple.parent(), triple}, style);
}

std::string pretty_json(const std::string& json_text, int indent) {
  return render(json::parse(json_text), JsonStyle{indent});
}

std::string matrix_json(const Matrix& m, const JsonStyle& style) { return render(matrix_value(m, style), style); }

cplx parse_complex(const std::string& text) {
  static const std::regex number(R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*)");
  static const std::regex full(
      R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*)");
  static const std::regex imag_only(R"(\s*([+-]?)\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij]\s*)");
  std::smatch m;
  if (std::regex_match(text, m, number)) return {std::stod(m[1]), 0.0};
  if (std::regex_match(text, m, imag_only)) {
    const double mag = m[2].matched ? std::stod(m[2]) : 1.0;
    return {0.0, m[1] == "-" ? -mag : mag};
  }
  if (std::regex_match(text, m, full) && m[1].matched && m[2].matched) {
    const double mag = m[3].matched ? std::stod(m[3]) : 1.0;
    return {std::stod(m[1]), m[2] == "-" ? -mag : mag};
  }
  throw Error(ErrorKind::input, "cannot read \"" + text + "\" as a complex number");
}

std::string format_complex(cplx z) {
  std::ostringstream out;
  out << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return out.str();
}

}  // namespace kreinrel
