#include <doctest.h>

#include "csf/csf.hpp"
#include "csf/spec_file.hpp"

using namespace csf;

TEST_CASE("luck-Tullock spec loads and evaluates") {
  const ContestSpecFile f =
      parse_spec_json(R"({"n": 3, "family": "luck_tullock", "a": [1,1,1], "b": [1,1,1], "r": 1, "backend": "rational"})");
  CHECK(f.backend == Backend::ExactRational);
  const ImpactSpec spec = f.build();
  const std::vector<Rational> x{2, 1, 0};
  CHECK(evaluate<Rational>(spec, std::span<const Rational>(x))[0] == Rational(1, 2));
}

TEST_CASE("decimal parameters are read by their decimal spelling") {
  const ContestSpecFile f =
      parse_spec_json(R"({"family": "luck_tullock", "a": [1,1,1], "b": [0.5, 0.3, "1/5"], "r": 1})");
  CHECK(f.b[1] == Rational(3, 10));
  CHECK(f.b[2] == Rational(1, 5));
  CHECK(f.contestants() == 3u);
}

TEST_CASE("round trip keeps parameters, family and backend") {
  const char* docs[] = {
      R"({"n": 3, "family": "luck_tullock", "a": [1, 2.5, "1/3"], "b": [0.3, 0, 2], "r": 2, "backend": "rational"})",
      R"({"n": 3, "family": "luck_tullock", "a": [1, 2.5, "1/3"], "b": [0.3, 0, 2], "r": 0.75})",
      R"({"n": 2, "family": "tullock", "a": [1, 2], "r": 1, "v": [1, 3], "labels": ["x", "y"]})",
      R"({"n": 3, "family": "linear_headstart", "b": [1, 0, 2]})",
      R"({"family": "symmetric_luck", "b_scalar": 0.1, "r": 1})",
      R"({"n": 4, "family": "ratio"})",
      R"({"family": "custom_table", "custom_table": [[[0, 1], [1, 2]], [[0, 0], [2, 1]]]})",
  };
  for (const char* doc : docs) {
    CAPTURE(doc);
    const ContestSpecFile f = parse_spec_json(doc);
    const ContestSpecFile g = parse_spec_json(to_json(f));
    CHECK(g.family == f.family);
    CHECK(g.n == f.n);
    CHECK(g.a == f.a);
    CHECK(g.b == f.b);
    CHECK(g.r == f.r);
    CHECK(g.b_scalar == f.b_scalar);
    CHECK(g.custom_table == f.custom_table);
    CHECK(g.backend == f.backend);
    CHECK(g.v == f.v);
    CHECK(g.labels == f.labels);
    CHECK(to_json(g) == to_json(f));
    CHECK(g.build().summary() == f.build().summary());
  }
}

TEST_CASE("schema violations are InvalidSpec") {
  const char* bad[] = {
      "not json",
      "[1,2]",
      R"({"family": "nope"})",
      R"({"a": [1,1]})",
      R"({"family": "tullock", "a": [1,1], "r": 1, "extra": 1})",
      R"({"family": "tullock", "a": [1,0], "r": 1})",
      R"({"family": "tullock", "a": [1,1], "b": [1,0], "r": 1})",
      R"({"n": 3, "family": "tullock", "a": [1,1], "r": 1})",
      R"({"family": "tullock", "a": [1,1], "r": -1})",
      R"({"family": "tullock", "a": [1,1], "r": 0.5, "backend": "rational"})",
      R"({"family": "tullock", "a": [1,1], "r": 1, "backend": "quad"})",
      R"({"family": "luck_tullock", "a": [1,1], "b": [1,-1], "r": 1})",
      R"({"family": "luck_tullock", "a": [1,1], "r": 1})",
      R"({"family": "symmetric_luck", "r": 1})",
      R"({"family": "linear_headstart", "b": [1,2], "r": 2})",
      R"({"family": "custom_table", "custom_table": [[[1, 1], [2, 2]], [[0, 0], [1, 1]]]})",
      R"({"family": "custom_table", "custom_table": [[[0, 1], [1, 1]], [[0, 0], [1, 1]]]})",
      R"({"family": "custom_table", "custom_table": [[[0, 1], [1, 2]]], "backend": "rational"})",
      R"({"n": 1, "family": "ratio"})",
      R"({"n": -2, "family": "ratio"})",
      R"({"family": "tullock", "a": ["1/0", 1], "r": 1})",
  };
  for (const char* doc : bad) {
    CAPTURE(doc);
    try {
      parse_spec_json(doc);
      FAIL("accepted an invalid spec");
    } catch (const CsfError& e) {
      CHECK(e.code() == ErrorCode::InvalidSpec);
    }
  }
}

TEST_CASE("valuations default to one") {
  const ContestSpecFile f = parse_spec_json(R"({"n": 2, "family": "ratio"})");
  CHECK(f.valuations(2) == std::vector<double>{1.0, 1.0});
  const ContestSpecFile g = parse_spec_json(R"({"n": 2, "family": "ratio", "v": [1, 2, 3]})");
  CHECK_THROWS_AS(g.valuations(2), CsfError);
}
