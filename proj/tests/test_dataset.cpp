#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "causaleval/dataset.hpp"
#include "causaleval/error.hpp"

using namespace causaleval;

namespace {

Dataset from_csv(const std::string& text,
                 const std::map<std::string, ColumnKind>& schema = {}) {
  std::istringstream in(text);
  return load_csv(in, schema);
}

}  // namespace

TEST_CASE("load_csv infers kinds from cell contents") {
  const Dataset ds = from_csv("y,arch\n0.91,resnet\n0.87,vit\n");
  CHECK(ds.n_rows() == 2);
  CHECK(ds.col("y").kind == ColumnKind::continuous);
  CHECK(ds.col("y").reals[0] == doctest::Approx(0.91));
  CHECK(ds.col("arch").kind == ColumnKind::categorical);
  CHECK(ds.col("arch").labels[1] == "vit");
}

TEST_CASE("load_csv error paths") {
  CHECK_THROWS_WITH_AS(from_csv("y,x\n"), doctest::Contains("empty dataset"), ParseError);
  CHECK_THROWS_WITH_AS(from_csv(""), doctest::Contains("empty file"), ParseError);
  CHECK_THROWS_AS(from_csv("y,y\n1,2\n"), ParseError);            // duplicate header
  CHECK_THROWS_AS(from_csv("y,x\n1,2,3\n"), ParseError);          // ragged row
  CHECK_THROWS_AS(from_csv("y,x\n1\n"), ParseError);              // ragged row (short)
  CHECK_THROWS_AS(from_csv("y,x\n1,\n"), ParseError);             // missing cell
  CHECK_THROWS_AS(from_csv("y\nnan\n"), ParseError);              // schema says continuous
  CHECK_THROWS_AS(from_csv("y\n1\n", {{"z", ColumnKind::continuous}}), ParseError);
  CHECK_THROWS_AS(from_csv("y\nabc\n", {{"y", ColumnKind::continuous}}), ParseError);
}

TEST_CASE("non-numeric and non-finite cells make a column categorical") {
  CHECK(from_csv("y\n1\nx2\n").col("y").kind == ColumnKind::categorical);
  CHECK(from_csv("y\n1\ninf\n").col("y").kind == ColumnKind::categorical);
  CHECK(from_csv("y\n1\nnan\n").col("y").kind == ColumnKind::categorical);
}

TEST_CASE("schema forces numeric-looking columns to categorical") {
  const Dataset ds = from_csv("g\n1\n2\n3\n", {{"g", ColumnKind::categorical}});
  CHECK(ds.col("g").kind == ColumnKind::categorical);
  CHECK(levels(ds.col("g")).size() == 3);
}

TEST_CASE("quoted fields carry commas and escaped quotes") {
  const Dataset ds = from_csv("name,x\n\"a,b\",1\n\"he said \"\"hi\"\"\",2\n");
  CHECK(ds.col("name").labels[0] == "a,b");
  CHECK(ds.col("name").labels[1] == "he said \"hi\"");
  CHECK(ds.col("x").reals[1] == 2.0);
}

TEST_CASE("crlf line endings and no trailing newline are accepted") {
  const Dataset ds = from_csv("y,x\r\n1,a\r\n2,b");
  CHECK(ds.n_rows() == 2);
  CHECK(ds.col("x").labels[1] == "b");
}

TEST_CASE("load_csv is deterministic") {
  const std::string text = "y,g\n1.5,u\n2.5,v\n-3,u\n";
  const Dataset a = from_csv(text);
  const Dataset b = from_csv(text);
  CHECK(a.col("y").reals == b.col("y").reals);
  CHECK(a.col("g").labels == b.col("g").labels);
}

TEST_CASE("center subtracts the sample mean") {
  const Dataset ds = from_csv("x\n1\n2\n3\n");
  const Dataset c = center(ds, {"x"});
  CHECK(c.col("x").reals == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(c.centered_means().at("x") == doctest::Approx(2.0));

  // single observation
  const Dataset one = center(from_csv("x\n5\n"), {"x"});
  CHECK(one.col("x").reals[0] == 0.0);

  // mean 1 computed by hand
  const Dataset m = center(from_csv("x\n0\n0\n0\n4\n"), {"x"});
  CHECK(m.col("x").reals == std::vector<double>{-1.0, -1.0, -1.0, 3.0});
}

TEST_CASE("center is idempotent") {
  const Dataset ds = from_csv("x,y\n1.25,9\n-7,8\n3.5,7\n0.125,6\n");
  const Dataset once = center(ds, {"x", "y"});
  const Dataset twice = center(once, {"x", "y"});
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    CHECK(std::abs(twice.col("x").reals[i] - once.col("x").reals[i]) < 1e-12);
    CHECK(std::abs(twice.col("y").reals[i] - once.col("y").reals[i]) < 1e-12);
  }
  // the recorded mean accumulates to the original column mean
  CHECK(twice.centered_means().at("y") == doctest::Approx(7.5));
}

TEST_CASE("center error paths leave nothing half-done") {
  const Dataset ds = from_csv("x,g\n1,u\n2,v\n");
  CHECK_THROWS_AS(center(ds, {"missing"}), ValueError);
  CHECK_THROWS_AS(center(ds, {"g"}), ValueError);
}

TEST_CASE("levels are sorted and distinct, reference first") {
  const Dataset ds = from_csv("g\nvit\nresnet\nvit\n");
  const auto lv = levels(ds.col("g"));
  CHECK(lv == std::vector<std::string>{"resnet", "vit"});

  CHECK(levels(from_csv("g\na\n").col("g")) == std::vector<std::string>{"a"});
  CHECK(levels(from_csv("g\nB\nA\nC\n").col("g")) ==
        std::vector<std::string>{"A", "B", "C"});

  // strictly increasing
  const auto many = levels(from_csv("g\nz\nq\nz\nb\nq\nm\n").col("g"));
  for (std::size_t i = 1; i < many.size(); ++i) CHECK(many[i - 1] < many[i]);

  CHECK_THROWS_AS(levels(ds.col("x")), ValueError);  // no such column
}

TEST_CASE("dataset invariants") {
  Column a{"a", ColumnKind::continuous, {1.0, 2.0}, {}};
  Column b{"b", ColumnKind::continuous, {1.0}, {}};
  CHECK_THROWS_AS(Dataset({a, b}), ValueError);  // unequal lengths
  Column dup{"a", ColumnKind::continuous, {3.0, 4.0}, {}};
  CHECK_THROWS_AS(Dataset({a, dup}), ValueError);  // duplicate names
  Column inf_col{"c", ColumnKind::continuous, {1.0, INFINITY}, {}};
  CHECK_THROWS_AS(Dataset({a, inf_col}), ValueError);  // non-finite
}
