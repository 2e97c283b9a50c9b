#include "doctest.h"
#include "starkit/io.hpp"

using namespace starkit;

namespace {

WorkspaceSpec parse(const std::string& text) { return parse_workspace_text(text, "ws"); }

std::string err_of(const std::string& text) {
  try {
    parse(text);
  } catch (const WorkspaceError& e) {
    return e.what();
  }
  return "";
}

const char* kRichWorkspace = R"(# demo
ring rat

algebra g2 grassmann 2
algebra m1 matrix 1
algebra dual custom 2 {
  label 1 one
  label 2 eps
  mult 1 1 = [1, 0]
  mult 1 2 = [0, 1]
  mult 2 1 = [0, 1]
}

functional tr m1 = [1]
functional fd dual = [1, 0]

family fam_d dual = fd

ideal je g2 {
  [0, 0, 0, 1]
}

bimodule col2 std 2
bimodule cc conjugate col2

commands {
  validate
  gns tr
  jmin dual
}
)";

}  // namespace

TEST_SUITE("io") {

TEST_CASE("serialization is a fixed point of parsing") {
  WorkspaceSpec w = parse(kRichWorkspace);
  std::string once = serialize_workspace(w);
  WorkspaceSpec again = parse_workspace_text(once, "ws2");
  CHECK(serialize_workspace(again) == once);
  CHECK(again.algebras.size() == w.algebras.size());
  CHECK(again.commands == w.commands);
  CHECK(same_presentation(again.find_algebra("dual")->alg, w.find_algebra("dual")->alg));
}

TEST_CASE("parsed objects carry the declared content") {
  WorkspaceSpec w = parse(kRichWorkspace);
  CHECK(w.ring == Ring::Rational);
  REQUIRE(w.find_algebra("g2") != nullptr);
  CHECK(w.find_algebra("g2")->alg->dim() == 4);
  REQUIRE(w.find_functional("tr") != nullptr);
  CHECK(w.find_functional("tr")->fn.values() == std::vector<Complex>{Complex(1)});
  REQUIRE(w.find_family("fam_d") != nullptr);
  CHECK(!w.find_family("fam_d")->builtin);
  REQUIRE(w.find_ideal("je") != nullptr);
  CHECK(w.find_ideal("je")->rows.rows() == 1);
  REQUIRE(w.find_bimodule("col2") != nullptr);
  CHECK(w.find_bimodule("col2")->mod.dim == 2);
  CHECK(w.commands.size() == 3);
  CHECK(w.find_algebra("missing") == nullptr);
  // custom labels survive the round trip
  CHECK(w.find_algebra("dual")->alg->labels()[1] == "eps");
}

TEST_CASE("ring override rewrites the ring before scalars are read") {
  WorkspaceSpec w = parse_workspace_text("ring rat\nalgebra m1 matrix 1\n", "ws",
                                         Ring::RatFun);
  CHECK(w.ring == Ring::RatFun);
  CHECK(w.find_algebra("m1")->alg->ring() == Ring::RatFun);
  // the override makes previously invalid scalars legal
  std::string text = "ring int\nalgebra f2 function_points 2\nfunctional h f2 = [1/2, l]\n";
  CHECK_THROWS_AS(parse_workspace_text(text, "ws"), WorkspaceError);
  WorkspaceSpec w2 = parse_workspace_text(text, "ws", Ring::RatFun);
  CHECK(w2.find_functional("h")->fn.values()[1].re() == Ordered::lambda());
}

TEST_CASE("diagnostics carry file and line") {
  CHECK(err_of("ring nope\n").find("ws:1:") == 0);
  CHECK(err_of("ring rat\nfunctional f miss = [1]\n").find("ws:2:") == 0);
  CHECK(err_of("ring rat\nalgebra a matrix 1\nfunctional f a = [1, 2]\n").find("ws:3:") == 0);
  CHECK(err_of("ring rat\nalgebra a matrix 1\nalgebra a matrix 1\n").find("ws:3:") == 0);
  // scalar outside the ring, reported at the functional line
  CHECK(err_of("ring rat\nalgebra a matrix 1\nfunctional f a = [l]\n").find("ws:3:") == 0);
  // unterminated block
  CHECK(err_of("ring rat\nalgebra a matrix 1\ncommands {\n  validate\n") != "");
  // ring must come first
  CHECK(err_of("algebra a matrix 1\nring rat\n") != "");
}

TEST_CASE("command arguments are checked at parse time") {
  std::string head = "ring rat\nalgebra a matrix 1\nfunctional t a = [1]\n";
  CHECK(err_of(head + "commands {\n  jmin\n}\n").find("ws:5:") == 0);
  CHECK(err_of(head + "commands {\n  jmin nosuch\n}\n").find("ws:5:") == 0);
  CHECK(err_of(head + "commands {\n  frobnicate a\n}\n").find("ws:5:") == 0);
  CHECK(err_of(head + "bimodule c std 2\ncommands {\n  induce c t\n}\n") == "");
  // functional over an algebra that is not the bimodule's right side
  std::string two = "ring rat\nalgebra a matrix 1\nalgebra f2 function_points 2\n"
                    "functional d f2 = [1, 0]\nbimodule c std 2\n";
  CHECK(err_of(two + "commands {\n  induce c d\n}\n").find("ws:7:") == 0);
}

TEST_CASE("vector and matrix literals") {
  auto v = parse_vector_literal("[1, -2/3, i]", 3, Ring::Rational);
  CHECK(v[1] == Complex(Ordered::rational(-2, 3)));
  CHECK(v[2] == Complex::i());
  CHECK(parse_vector_literal(vector_literal(v), 3, Ring::Rational) == v);
  CHECK_THROWS_AS(parse_vector_literal("[1, 2]", 3, Ring::Rational), std::invalid_argument);
  CHECK_THROWS_AS(parse_vector_literal("1, 2", 2, Ring::Rational), std::invalid_argument);
  CHECK_THROWS_AS(parse_vector_literal("[1, l]", 2, Ring::Rational), std::invalid_argument);

  CMat m = parse_matrix_literal("[[1, 0], [0, (1+i)/2]]", 2, 2, Ring::Rational);
  CHECK(m.at(1, 1) == Complex(Ordered::rational(1, 2), Ordered::rational(1, 2)));
  CHECK(parse_matrix_literal(matrix_literal(m), 2, 2, Ring::Rational) == m);
  CHECK_THROWS_AS(parse_matrix_literal("[[1], [2, 3]]", 2, 2, Ring::Rational),
                  std::invalid_argument);
}

TEST_CASE("family resolution prefers the explicit request") {
  std::string text =
      "ring rat\nalgebra f2 function_points 2\n"
      "functional d1 f2 = [1, 0]\nfunctional d2 f2 = [0, 1]\n"
      "family small f2 = d1\nfamily big f2 = d1 d2\n";
  WorkspaceSpec w = parse(text);
  const NamedAlgebra& a = *w.find_algebra("f2");
  std::string desc;
  auto req = resolve_family(w, a, "small", &desc);
  CHECK(req.size() == 1);
  CHECK(desc.find("small") != std::string::npos);
  CHECK(resolve_family(w, a, "big", &desc).size() == 2);
  CHECK_THROWS_AS(resolve_family(w, a, "nosuch", &desc), std::invalid_argument);
  // two declared families and no request: ambiguous
  CHECK_THROWS_AS(resolve_family(w, a, "", &desc), std::invalid_argument);
}

TEST_CASE("a uniquely declared family becomes the default") {
  std::string text =
      "ring rat\nalgebra f2 function_points 2\n"
      "functional d1 f2 = [1, 0]\nfamily only f2 = d1\n";
  WorkspaceSpec w = parse(text);
  std::string desc;
  auto def = resolve_family(w, *w.find_algebra("f2"), "", &desc);
  CHECK(def.size() == 1);
  CHECK(desc.find("only") != std::string::npos);
  // a family declared over another algebra cannot be requested here
  std::string two = text + "algebra m1 matrix 1\n";
  WorkspaceSpec w2 = parse(two);
  CHECK_THROWS_AS(resolve_family(w2, *w2.find_algebra("m1"), "only", &desc),
                  std::invalid_argument);
}

TEST_CASE("builtin family declarations are materialized from provenance") {
  std::string text = "ring rat\nalgebra f3 function_points 3\nfamily std f3 builtin\n";
  WorkspaceSpec w = parse(text);
  auto fam = materialize_family(w, *w.find_family("std"));
  CHECK(fam.size() == builtin_functional_family(w.find_algebra("f3")->alg).size());
  // builtin families over custom algebras are rejected at parse time
  std::string bad =
      "ring rat\nalgebra c custom 1 {\n  mult 1 1 = [1]\n}\nfamily std c builtin\n";
  CHECK(err_of(bad).find("ws:5:") == 0);
}

TEST_CASE("derived constructions parse recursively") {
  std::string text =
      "ring rat\n"
      "algebra f2 function_points 2\n"
      "algebra m2f matrix_over f2 2\n"
      "algebra both direct_sum f2 m2f\n"
      "ideal k f2 {\n  [1, 0]\n}\n"
      "algebra q quotient f2 k\n"
      "bimodule p projection f2 2 {\n  q 1 1 = [1, 1]\n}\n";
  WorkspaceSpec w = parse(text);
  CHECK(w.find_algebra("m2f")->alg->dim() == 8);
  CHECK(w.find_algebra("both")->alg->dim() == 10);
  CHECK(w.find_algebra("q")->alg->dim() == 1);
  CHECK(w.find_bimodule("p")->mod.dim == 2);
  std::string once = serialize_workspace(w);
  CHECK(serialize_workspace(parse_workspace_text(once, "ws2")) == once);
}

TEST_CASE("custom bimodule blocks round trip") {
  std::string text =
      "ring rat\n"
      "algebra m1 matrix 1\n"
      "bimodule line custom m1 m1 1 {\n"
      "  left 1 = [[1]]\n"
      "  right 1 = [[1]]\n"
      "  iprod_a 1 1 = [1]\n"
      "  iprod_b 1 1 = [1]\n"
      "}\n";
  WorkspaceSpec w = parse(text);
  const auto& mod = w.find_bimodule("line")->mod;
  CHECK(validate_bimodule(mod).ok());
  REQUIRE(mod.iprod_b.has_value());
  std::string once = serialize_workspace(w);
  CHECK(serialize_workspace(parse_workspace_text(once, "ws2")) == once);
}

}  // TEST_SUITE
