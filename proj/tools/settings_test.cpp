#include "doctest.h"
#include "lifo/error.hpp"
#include "settings.hpp"

using namespace lifo;
using lifo::cli::Json;
using lifo::cli::Settings;

TEST_CASE("flags override the config file") {
  Settings s(Json::parse(R"({"k": 3, "p": 0.25, "n": 100})"), {{"p", "1/2"}});
  CHECK(s.get_int("k", 2) == 3);
  CHECK(s.get_double("p", 0.0) == 0.5);
  CHECK(s.get_int("n", 1) == 100);
  CHECK(s.get_int("trials", 7) == 7);
  CHECK(s.echo()["p"] == 0.5);
  CHECK(s.echo()["trials"] == 7);
}

TEST_CASE("numbers are parsed strictly") {
  Settings s(nullptr, {{"k", "3x"}, {"cap", "1e10"}, {"neg", "-4"}, {"frac", "2.5"}});
  CHECK_THROWS_AS(s.get_int("k", 2), ConfigError);
  CHECK(s.get_u64("cap", 0) == 10'000'000'000ULL);
  CHECK_THROWS_AS(s.get_u64("neg", 0), ConfigError);
  CHECK_THROWS_AS(s.get_u64("frac", 0), ConfigError);
  try {
    s.get_int("k", 2);
  } catch (const ConfigError& e) {
    CHECK(e.field() == "k");
  }
}

TEST_CASE("lists from flags and from the config file") {
  Settings s(Json::parse(R"({"a-grid": [0, 1.5, 4], "prefixes": "10,100"})"), {{"pairs", "1-2:2-3,1-3:1-3"}});
  CHECK(s.get_list("a-grid", {}) == std::vector<std::string>{"0", "1.5", "4"});
  CHECK(s.get_list("prefixes", {}) == std::vector<std::string>{"10", "100"});
  CHECK(s.get_list("pairs", {}) == std::vector<std::string>{"1-2:2-3", "1-3:1-3"});
  CHECK(s.get_list("missing", {"x"}) == std::vector<std::string>{"x"});
}

TEST_CASE("seed is mandatory") {
  Settings none(nullptr, {});
  CHECK_THROWS_AS(none.require_seed(), ConfigError);
  Settings file(Json::parse(R"({"seed": 42})"), {});
  CHECK(file.require_seed() == 42);
}

TEST_CASE("config must be an object") {
  CHECK_THROWS_AS(Settings(Json::parse("[1, 2]"), {}), ConfigError);
}
