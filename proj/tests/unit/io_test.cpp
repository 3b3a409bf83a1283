#include "kreinrel/io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace kreinrel {
namespace {

namespace c4 = testing::c4;

std::string input_error(const std::string& text) {
  try {
    parse_document(text, "doc.json");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::input);
    return e.what();
  }
  ADD_FAILURE() << "document was accepted";
  return {};
}

TEST(Complex, ParsesCommonForms) {
  EXPECT_EQ(parse_complex("1+2i"), cplx(1, 2));
  EXPECT_EQ(parse_complex("-i"), cplx(0, -1));
  EXPECT_EQ(parse_complex("i"), cplx(0, 1));
  EXPECT_EQ(parse_complex("0.5"), cplx(0.5, 0));
  EXPECT_EQ(parse_complex("2.5e-1-3i"), cplx(0.25, -3));
  EXPECT_EQ(parse_complex("-2i"), cplx(0, -2));
  EXPECT_THROW(parse_complex("1+"), Error);
  EXPECT_THROW(parse_complex("abc"), Error);
}

TEST(Complex, FormatRoundTrip) {
  for (cplx z : {cplx(1, 2), cplx(0, -1), cplx(-0.5, 0), cplx(3, -4.25)}) {
    EXPECT_EQ(parse_complex(format_complex(z)), z);
  }
}

TEST(Document, TripleRoundTrip) {
  const BoundaryTriple tr = c4::triple();
  const Document doc = parse_document(triple_json(tr));
  ASSERT_TRUE(doc.triple.has_value());
  ASSERT_TRUE(doc.relation.has_value());
  ASSERT_TRUE(doc.space.has_value());
  EXPECT_LT((doc.space->J() - tr.space().J()).norm(), 1e-15);
  EXPECT_LT(distance(doc.relation->graph(), c4::t().graph()), 1e-12);
  EXPECT_LT(distance(doc.triple->t0().graph(), c4::t0()), 1e-12);
  EXPECT_EQ(doc.triple->boundary_dim(), 3);
}

TEST(Document, SpaceAndRelationOnly) {
  const std::string text = R"({
  "space": {"dim": 2, "J": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]},
  "relation": {"graph": [[[1, 0], [0, 0], [0, 0], [1, 0]]]}
})";
  const Document doc = parse_document(text);
  EXPECT_EQ(doc.space->p(), 1);
  EXPECT_EQ(doc.relation->dim(), 1);
  EXPECT_FALSE(doc.triple.has_value());
}

TEST(Document, ErrorsCarryLineAndColumn) {
  const std::string wrong_length = "{\n  \"space\": {\"dim\": 2, \"J\": [[[1,0],[0,0]],[[0,0],[1,0]]]},\n"
                                   "  \"relation\": {\"graph\": [[[1,0],[0,0],[0,0]]]}\n}\n";
  const std::string msg = input_error(wrong_length);
  EXPECT_NE(msg.find("doc.json:3:"), std::string::npos) << msg;
  const std::string syntax = input_error("{\n  \"space\": {\"dim\": 2,\n  \"J\": [[1,0]\n}\n");
  EXPECT_NE(syntax.find("doc.json:4:"), std::string::npos) << syntax;
  const std::string not_involution = input_error(R"({"space": {"dim": 1, "J": [[[2, 0]]]}})");
  EXPECT_NE(not_involution.find("doc.json:1:"), std::string::npos) << not_involution;
  EXPECT_FALSE(input_error(R"({"space": {"dim": 2, "J": [[[1, 0]]]}})").empty());
  EXPECT_FALSE(input_error(R"({"space": {"dim": "two"}})").empty());
}

TEST(Document, ComplexScalarMustBePair) {
  const std::string msg = input_error(R"({"space": {"dim": 1, "J": [[[1, 0, 0]]]}})");
  EXPECT_NE(msg.find("[re, im]"), std::string::npos) << msg;
}

TEST(Matrix, ParseAndPoints) {
  const Matrix m = parse_matrix("[[[1, 0], [0, 1]], [[2, 0], [0, -1]]]");
  EXPECT_EQ(m(0, 1), cplx(0, 1));
  EXPECT_EQ(m(1, 0), cplx(2, 0));
  const auto pts = parse_points("[[0, 1], [1, 2]]");
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[1], cplx(1, 2));
}

TEST(Pretty, KeepsRowsOnOneLine) {
  EXPECT_EQ(pretty_json(R"({"a": [[1, 2], [3, 4]], "b": {"c": true}})"),
            "{\n  \"a\": [[1, 2], [3, 4]],\n  \"b\": {\n    \"c\": true\n  }\n}\n");
}

TEST(Rounded, NoNegativeZeros) {
  Matrix m(1, 2);
  m << cplx(-0.0, -1e-15), cplx(1.0000000000001, 0);
  EXPECT_EQ(matrix_json(m, JsonStyle{2, true, false}).find("-0.0"), std::string::npos);
}

}  // namespace
}  // namespace kreinrel
