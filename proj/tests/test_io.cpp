#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "orbithull/io.hpp"
#include "orbithull/random.hpp"

using namespace orbithull;

namespace {

std::string where_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.where();
  }
  return "";
}

}  // namespace

TEST_CASE("complex and tuple readers") {
  CHECK(complex_from_json(Json(2.5), "t") == Complex(2.5, 0.0));
  CHECK(complex_from_json(Json::parse("[1, -2]"), "t") == Complex(1.0, -2.0));
  const CVector v = tuple_from_json(Json::parse("[1, [0, 1]]"), "t");
  CHECK(v(1) == Complex(0.0, 1.0));
  CHECK(where_of([] { complex_from_json(Json("x"), "f.json#/a"); }) == "f.json#/a");
  CHECK(where_of([] { tuple_from_json(Json::parse("[1, [0, 1, 2]]"), "f.json#"); }) == "f.json#/1");
}

TEST_CASE("matrix readers") {
  const CMatrix rows = matrix_from_json(Json::parse(R"({"rows": [[1, 2], [3, [0, 4]]]})"), "m");
  CHECK(rows(1, 1) == Complex(0.0, 4.0));
  const CMatrix d = matrix_from_json(Json::parse(R"({"diag": [1, 2]})"), "m");
  CHECK(d(1, 1) == Complex(2.0));
  CHECK(d(0, 1) == Complex(0.0));
  const CMatrix bare = matrix_from_json(Json::parse("[[1, 0], [0, 1]]"), "m");
  CHECK(bare.isIdentity());
  CHECK(where_of([] { matrix_from_json(Json::parse(R"({"rows": [[1, 2], [3]]})"), "m.json#"); }) ==
        "m.json#/rows/1");
  CHECK(where_of([] { real_matrix_from_json(Json::parse(R"({"rows": [[1, [0, 1]]]})"), "r.json#"); }) ==
        "r.json#/rows/0/1");
}

TEST_CASE("measure and channel round trips") {
  const DiscreteMeasure m({Complex(0, 1), 2.0}, {0.25, 0.75});
  const DiscreteMeasure back = measure_from_json(to_json(m), "m");
  CHECK(back.support() == m.support());
  CHECK(back.weights() == m.weights());

  Rng rng = make_rng(70);
  const MixedUnitaryChannel ch(3, {{0.5, random_unitary(rng, 3)}, {0.5, random_unitary(rng, 3)}});
  const MixedUnitaryChannel again = channel_from_json(to_json(ch), "c");
  REQUIRE(again.size() == 2);
  CHECK(again.terms()[1].unitary == ch.terms()[1].unitary);
  CHECK(again.terms()[0].weight == ch.terms()[0].weight);
}

TEST_CASE("doubles survive serialization bit for bit") {
  Rng rng = make_rng(71);
  const CVector v = random_tuple(rng, 6);
  const std::string text = to_json(v).dump();
  CHECK(tuple_from_json(Json::parse(text), "v") == v);
}

TEST_CASE("file loading diagnostics") {
  const std::string path = "orbithull_io_test.json";
  {
    std::ofstream out(path);
    out << "{\"rows\": [[1, 0]\n";
  }
  const std::string w = where_of([&] { load_json(path); });
  CHECK(w.rfind(path + "@", 0) == 0);
  CHECK(where_of([] { load_json("does/not/exist.json"); }) == "does/not/exist.json");
  std::remove(path.c_str());
}
