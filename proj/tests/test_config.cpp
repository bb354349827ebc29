#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubicwave/config.hpp"

using namespace cubicwave;

TEST_CASE("parses tables, scalars, arrays, comments") {
    const auto cfg = Config::parse(R"(
# run settings
title = "demo"
[grid]
sector = "radial"   # sector choice
n_r = 32
[run]
tau_max = 5.5
strict = true
a3_list = [0.0, 0.1, 0.2]
)");
    CHECK(cfg.get_string("title", "") == "demo");
    CHECK(cfg.get_string("grid.sector", "") == "radial");
    CHECK(cfg.get_int("grid.n_r", 0) == 32);
    CHECK(cfg.get_double("run.tau_max", 0) == 5.5);
    CHECK(cfg.get_bool("run.strict", false));
    CHECK(cfg.get_list("run.a3_list", {}).size() == 3);
    CHECK_NOTHROW(cfg.reject_unknown());
}

TEST_CASE("unknown keys are rejected") {
    const auto cfg = Config::parse("[grid]\nn_r = 16\nmystery = 1\n");
    CHECK(cfg.get_int("grid.n_r", 0) == 16);
    CHECK_THROWS_AS(cfg.reject_unknown(), ConfigError);
}

TEST_CASE("type errors and malformed lines") {
    const auto cfg = Config::parse("x = \"s\"\n");
    CHECK_THROWS_AS(cfg.get_double("x", 0), ConfigError);
    CHECK_THROWS_AS(Config::parse("novalue =\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("[t\nk = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("k = 1\nk = 2\n"), ConfigError);
}

TEST_CASE("echo is canonical and stable") {
    const auto cfg = Config::parse("b = 2\na = 1\n");
    CHECK(cfg.echo() == "a = 1\nb = 2\n");
}
