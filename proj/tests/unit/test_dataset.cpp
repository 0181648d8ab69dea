#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "fairenc/dataset.hpp"
#include "fairenc/error.hpp"

using namespace fairenc;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a fairenc::Error");
  return ErrorKind::kIo;
}

Dataset small() {
  return Dataset({{"race", {"a", "a", "b", "b", "b", "c"}}, {"sex", {"m", "f", "m", "f", "m", "f"}}},
                 {1, 0, 1, 1, 0, 1});
}

}  // namespace

TEST_SUITE("dataset") {
  TEST_CASE("parse_csv reads columns and binarizes the target") {
    const auto d = parse_csv("race,target,sex\na,yes,m\nb,no,f\nb,yes,f\n", {"target", "yes"});
    CHECK(d.size() == 3);
    CHECK(d.column_names() == std::vector<std::string>{"race", "sex"});
    CHECK(d.target() == std::vector<std::uint8_t>{1, 0, 1});
    CHECK(d.column("sex").values == std::vector<std::string>{"m", "f", "f"});
  }

  TEST_CASE("parse_csv tolerates a BOM and CRLF line endings") {
    const auto d = parse_csv("\xEF\xBB\xBFx,target\r\np,1\r\nq,0\r\n", {});
    CHECK(d.column_names() == std::vector<std::string>{"x"});
    CHECK(d.target() == std::vector<std::uint8_t>{1, 0});
  }

  TEST_CASE("parse_csv error kinds") {
    CHECK(kind_of([] { parse_csv("", {}); }) == ErrorKind::kEmptyFile);
    CHECK(kind_of([] { parse_csv("x,target\n", {}); }) == ErrorKind::kEmptyFile);
    CHECK(kind_of([] { parse_csv("x,y\na,1\n", {}); }) == ErrorKind::kMissingColumn);
    CHECK(kind_of([] { parse_csv("x,target\na,1,2\n", {}); }) == ErrorKind::kMalformedCsv);
    CHECK(kind_of([] { parse_csv("x,target\n\"a\",1\n", {}); }) == ErrorKind::kMalformedCsv);
    CHECK(kind_of([] { parse_csv("x,target\na|b,1\n", {}); }) == ErrorKind::kMalformedCsv);
    CHECK(kind_of([] { parse_csv("x,target\na,0\nb,1\nc,2\n", {}); }) ==
          ErrorKind::kNonBinaryTarget);
    CHECK(kind_of([] { parse_csv("x,target\na,low\nb,high\n", {"target", "1"}); }) ==
          ErrorKind::kNonBinaryTarget);
  }

  TEST_CASE("single-valued target maps through the positive label") {
    CHECK(parse_csv("x,target\na,1\nb,1\n", {}).target() == std::vector<std::uint8_t>{1, 1});
    CHECK(parse_csv("x,target\na,0\nb,0\n", {}).target() == std::vector<std::uint8_t>{0, 0});
  }

  TEST_CASE("load_csv on a missing path is an io error") {
    CHECK(kind_of([] { load_csv("/nonexistent/fairenc.csv", {}); }) == ErrorKind::kIo);
  }

  TEST_CASE("csv round trip through a file") {
    const auto d = small();
    const auto path = std::filesystem::temp_directory_path() / "fairenc_dataset_roundtrip.csv";
    write_csv(d, path);
    const auto back = load_csv(path, {});
    std::filesystem::remove(path);
    CHECK(back.column_names() == d.column_names());
    CHECK(back.target() == d.target());
    for (const auto& c : d.columns()) CHECK(back.column(c.name).values == c.values);
    CHECK(to_csv(back) == to_csv(d));
  }

  TEST_CASE("constructor validation") {
    CHECK(kind_of([] { Dataset({{"a", {"x"}}, {"a", {"y"}}}, {0}); }) == ErrorKind::kNameCollision);
    CHECK(kind_of([] { Dataset({{"a", {"x", "y"}}}, {0}); }) == ErrorKind::kInvalidArgument);
    CHECK(kind_of([] { Dataset({{"a", {"x"}}}, {2}); }) == ErrorKind::kNonBinaryTarget);
    CHECK(kind_of([] { (void)small().column("nope"); }) == ErrorKind::kMissingColumn);
  }

  TEST_CASE("group_stats counts per category, sorted") {
    const auto gs = group_stats(small(), "race");
    CHECK(gs.n == 6);
    CHECK(gs.n_pos == 4);
    CHECK(gs.prior == doctest::Approx(4.0 / 6.0));
    REQUIRE(gs.categories.size() == 3);
    CHECK(gs.categories[0].label == "a");
    CHECK(gs.categories[1].n == 3);
    CHECK(gs.categories[1].n_pos == 2);
    CHECK(gs.find("c")->p_hat == 1.0);
    CHECK(gs.find("zzz") == nullptr);
  }

  TEST_CASE("concat_columns joins with the separator") {
    const auto d = concat_columns(small(), "race", "sex", "race_sex");
    CHECK(d.column("race_sex").values.front() == "a|m");
    CHECK(group_stats(d, "race_sex").categories.size() == 5);  // c|m never occurs
    CHECK(kind_of([] { concat_columns(small(), "race", "sex", "race"); }) ==
          ErrorKind::kNameCollision);
    CHECK(kind_of([] { concat_columns(small(), "race", "nope", "z"); }) ==
          ErrorKind::kMissingColumn);
  }

  TEST_CASE("stratified split keeps per-category proportions and partitions rows") {
    std::vector<std::string> cat;
    std::vector<std::uint8_t> y;
    std::vector<std::string> id;
    for (int i = 0; i < 1000; ++i) {
      cat.push_back(i < 700 ? "big" : (i < 990 ? "mid" : (i < 999 ? "small" : "single")));
      y.push_back(static_cast<std::uint8_t>(i % 3 == 0));
      id.push_back(std::to_string(i));
    }
    const Dataset d({{"cat", cat}, {"id", id}}, y);
    const auto s = stratified_split(d, "cat", 0.5, 7);
    CHECK(s.train.size() + s.test.size() == d.size());
    const auto tr = group_stats(s.train, "cat");
    CHECK(tr.find("big")->n == 350);
    CHECK(tr.find("mid")->n == 145);
    CHECK(tr.find("small")->n == 5);  // llround(4.5)
    CHECK(tr.find("single")->n == 1);  // singletons go to train
    CHECK(group_stats(s.test, "cat").find("single") == nullptr);

    std::set<std::string> seen;
    for (const auto& v : s.train.column("id").values) seen.insert(v);
    for (const auto& v : s.test.column("id").values) CHECK(seen.insert(v).second);
    CHECK(seen.size() == d.size());

    // Row order is preserved inside each partition.
    const auto& ids = s.train.column("id").values;
    for (std::size_t i = 1; i < ids.size(); ++i) CHECK(std::stoi(ids[i - 1]) < std::stoi(ids[i]));
  }

  TEST_CASE("stratified split is a function of the seed") {
    const auto d = small();
    CHECK(to_csv(stratified_split(d, "race", 0.5, 3).train) ==
          to_csv(stratified_split(d, "race", 0.5, 3).train));
    CHECK(kind_of([&] { stratified_split(d, "race", 1.0, 0); }) == ErrorKind::kInvalidArgument);
    CHECK(kind_of([&] { stratified_split(d, "race", 0.0, 0); }) == ErrorKind::kInvalidArgument);
  }

  TEST_CASE("select_rows and without_columns") {
    const auto d = small().select_rows({5, 0});
    CHECK(d.column("race").values == std::vector<std::string>{"c", "a"});
    CHECK(d.target() == std::vector<std::uint8_t>{1, 1});
    CHECK(small().without_columns({"sex"}).column_names() == std::vector<std::string>{"race"});
  }
}
