#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "spinmod/io.hpp"

using namespace spinmod;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("spinmod_test_" + name)).string();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("cyclotomic numbers round-trip through JSON") {
  CycloNumber x = make_root(12, 5).scaled(mpq_class(-3, 7)) + CycloNumber::integer(CycloField::get(12), 2);
  json j = cyclo_to_json(x);
  CHECK(j["N"] == 12);
  CHECK(j["coeffs"].size() == 4);
  CHECK(cyclo_from_json(j) == x);
  CHECK(cyclo_from_json(json::parse(R"({"N": 4, "coeffs": ["1/2", 3]})")) ==
        CycloNumber::rational(CycloField::get(4), mpq_class(1, 2)) + make_root(4, 1).scaled(3));
  CHECK(cyclo_from_json(cyclo_to_json(make_root(4, 1)), CycloField::get(8)) == make_root(8, 2));
  CHECK_THROWS_AS(cyclo_from_json(json::parse(R"({"N": 4, "coeffs": ["1"]})")), InputError);
  CHECK_THROWS_AS(cyclo_from_json(json::parse(R"({"N": 4, "coeffs": ["1/0", "1"]})")), InputError);
  CHECK_THROWS_AS(cyclo_from_json(json::parse(R"({"N": 4, "coeffs": ["x", "1"]})")), InputError);
  CHECK_THROWS_AS(cyclo_from_json(json::parse(R"({"coeffs": []})")), InputError);
  CHECK_THROWS_AS(cyclo_from_json(cyclo_to_json(make_root(8, 1)), CycloField::get(4)), InputError);
}

TEST_CASE("builtin categories") {
  CHECK(builtin_category("builtin:sl2:5") == sl2_category(5));
  CHECK(builtin_category("builtin:sl2:5:kauffman") == sl2_category(5));
  CHECK(builtin_category("builtin:abelian:3:1:3") == abelian_category(3, make_root(3, 1)));
  CHECK(builtin_category("builtin:trivial").size() == 1);
  CHECK(builtin_category("builtin:sl2:4 * abelian:2:1:4").size() == 6);
  CHECK(builtin_category("builtin:sl2:4*builtin:sl2:3").size() == 6);
  for (const char* bad : {"sl2:5", "builtin:", "builtin:sl2", "builtin:sl2:2", "builtin:sl2:x", "builtin:sl2:5:foo",
                          "builtin:abelian:3:1", "builtin:abelian:0:1:3", "builtin:trivial:1", "builtin:so3:5"})
    CHECK_THROWS_AS(builtin_category(bad), InputError);
}

TEST_CASE("category JSON round-trip") {
  for (const char* src : {"builtin:sl2:6", "builtin:abelian:4:1:8", "builtin:sl2:3*abelian:2:1:4"}) {
    CategoryData c = builtin_category(src);
    const std::string path = temp_path("cat.json");
    write(path, category_to_json(c).dump(2));
    CategoryData back = load_category(path);
    CHECK(back == c);
    CHECK(category_to_json(back) == category_to_json(c));
    std::filesystem::remove(path);
  }
}

TEST_CASE("malformed category files") {
  json j = category_to_json(sl2_category(4));
  json missing = j;
  missing.erase("twist");
  CHECK_THROWS_AS(category_from_json(missing), InputError);
  json bad_fusion = j;
  bad_fusion["fusion"].push_back({0, 0, 9, 1});
  CHECK_THROWS_AS(category_from_json(bad_fusion), InputError);
  json short_s = j;
  short_s["smatrix"].erase(0);
  CHECK_THROWS_AS(category_from_json(short_s), InputError);
  const std::string path = temp_path("garbage.json");
  write(path, "{not json");
  CHECK_THROWS_AS(load_category(path), InputError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_category("/nonexistent/cat.json"), InputError);
}

TEST_CASE("matrix parsing") {
  IntMatrix m{{2, -1}, {-1, 3}};
  CHECK(parse_matrix("[[2,-1],[-1,3]]") == m);
  CHECK(parse_matrix("2 -1; -1 3") == m);
  CHECK(parse_matrix("2,-1;-1,3") == m);
  CHECK(parse_matrix("[[0]]") == IntMatrix{{0}});
  const std::string path = temp_path("matrix.txt");
  write(path, "2 -1\n; -1 3\n");
  CHECK(parse_matrix(path) == m);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(parse_matrix("[[1,2],[3,4]]"), InputError);
  CHECK_THROWS_AS(parse_matrix("[[1,2]]"), InputError);
  CHECK_THROWS_AS(parse_matrix("1 a; 2 3"), InputError);
  CHECK_THROWS_AS(parse_matrix("[[1,"), InputError);
}

TEST_CASE("forest files") {
  const std::string path = temp_path("f.forest");
  write(path, format_forest(e8_forest()));
  CHECK(load_forest(path) == e8_forest());
  json j = forest_to_json(load_forest(path));
  CHECK(j["b_plus"] == 8);
  CHECK(j["vertices"] == 8);
  write(path, "vertex 0 framing 1\nvertex 1 framing 1\nedge 0 1 +1\nedge 1 0 +1\n");
  CHECK_THROWS_AS(load_forest(path), InputError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_forest("/nonexistent.forest"), InputError);
}

TEST_CASE("table serialization") {
  Evaluator ev(sl2_category(8));
  auto t = wrt_spin(ev, chain_forest({0}), default_grading(ev.category(), invertibles(ev.category())));
  json j = table_to_json(t);
  CHECK(j["kind"] == "spin");
  CHECK(j["entries"].size() == 2);
  CHECK(j["entries"][1]["structure"] == json::array({1}));
  CHECK(cyclo_from_json(j["entries"][0]["exact"]) == t.values[0].exact);
  std::string csv = table_to_csv(t);
  CHECK(csv.rfind("kind,d,structure,re,im,N,coeffs\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(vector_key({1, -2, 0}) == "1,-2,0");
}
