#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "renyi/report.hpp"

using namespace renyi;

namespace {

ReportTable sample_table() {
  ReportTable t({"name", "n", "value"});
  t.add_row({std::string("a,b"), std::int64_t{3}, 0.25});
  t.add_row({std::string("say \"hi\""), std::int64_t{-1}, Missing{"no_interval"}});
  t.meta()["experiment"] = "demo";
  t.meta()["master_seed"] = 12345;
  return t;
}

}  // namespace

TEST_CASE("CSV escaping") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("q\"q") == "\"q\"\"q\"");
  CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
  CHECK(csv_escape("") == "");
}

TEST_CASE("CSV output") {
  std::ostringstream out;
  sample_table().write_csv(out);
  CHECK(out.str() ==
        "# experiment: demo\n"
        "# master_seed: 12345\n"
        "name,n,value\n"
        "\"a,b\",3,0.25\n"
        "\"say \"\"hi\"\"\",-1,NA:no_interval\n");
}

TEST_CASE("JSON output") {
  std::ostringstream out;
  sample_table().write_json(out);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["meta"]["experiment"] == "demo");
  CHECK(doc["meta"]["master_seed"] == 12345);
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["name"] == "a,b");
  CHECK(doc["rows"][0]["n"] == 3);
  CHECK(doc["rows"][0]["value"].get<double>() == 0.25);
  CHECK(doc["rows"][1]["value"]["missing"] == "no_interval");
}

TEST_CASE("non-finite values must be tagged") {
  ReportTable t({"x"});
  CHECK_THROWS_AS(t.add_row({std::numeric_limits<double>::infinity()}), std::logic_error);
  CHECK_THROWS_AS(t.add_row({std::nan("")}), std::logic_error);
  CHECK_THROWS_AS(t.add_row({1.0, 2.0}), std::logic_error);
  CHECK(t.rows().empty());
}

TEST_CASE("cell access and comparison") {
  const auto t = sample_table();
  CHECK(t.number(0, "value") == 0.25);
  CHECK(t.number(0, "n") == 3.0);
  CHECK_THROWS((void)t.number(1, "value"));
  CHECK_THROWS_AS((void)t.column_index("missing"), std::out_of_range);

  auto u = sample_table();
  u.meta()["wall_time_s"] = 1.5;
  CHECK(t.same_data(u));

  ReportTable a({"x"});
  ReportTable b({"x"});
  a.add_row({0.0});
  b.add_row({-0.0});
  CHECK_FALSE(a.same_data(b));
  ReportTable c({"x"});
  c.add_row({std::int64_t{0}});
  CHECK_FALSE(a.same_data(c));
  ReportTable d({"y"});
  d.add_row({0.0});
  CHECK_FALSE(a.same_data(d));
}

TEST_CASE("real cells round trip through text") {
  ReportTable t({"x"});
  const double x = 0.1 + 0.2;
  t.add_row({x});
  std::ostringstream out;
  t.write_csv(out);
  const std::string text = out.str();
  const double parsed = std::stod(text.substr(text.find('\n') + 1));
  CHECK(parsed == x);
}
