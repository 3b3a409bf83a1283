#pragma once

#include "kreinrel/boundary.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kreinrel {

// One document type for every file: `space` {dim, J}, `relation` {graph}, `triple` {boundary_dim, gamma, tplus}.
// Complex scalars are [re, im] pairs; matrices are row-major nested arrays; vectors are flat arrays.
struct Document {
  std::optional<KreinSpace> space;
  std::optional<LinearRelation> relation;
  std::optional<BoundaryTriple> triple;
};

// Input errors carry "origin:line:column: message".
Document parse_document(const std::string& text, const std::string& origin = "<input>");
Document load_document(const std::string& path);

struct JsonStyle {
  int indent = 2;
  // Round to a 1e-12 grid so that printed results are stable across platforms.
  bool rounded = false;
  // Print relation graphs in the echelon basis instead of the stored frame.
  bool echelon = false;
};

std::string dump_document(const Document& doc, const JsonStyle& style = {});
std::string space_json(const KreinSpace& space, const JsonStyle& style = {});
std::string relation_json(const LinearRelation& t, const JsonStyle& style = {});
std::string triple_json(const BoundaryTriple& triple, const JsonStyle& style = {});
std::string matrix_json(const Matrix& m, const JsonStyle& style = {});
// Re-indents any JSON text, keeping scalar pairs and matrix rows on one line.
std::string pretty_json(const std::string& json_text, int indent = 2);

// A bare matrix or a list of complex points, with the same error context as documents.
Matrix parse_matrix(const std::string& text, const std::string& origin = "<input>");
std::vector<cplx> parse_points(const std::string& text, const std::string& origin = "<input>");
std::string read_file(const std::string& path);

// "1+2i", "-i", "0.5", "2.5e-1-3i".
cplx parse_complex(const std::string& text);
std::string format_complex(cplx z);

}  // namespace kreinrel
