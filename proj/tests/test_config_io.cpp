#include <catch2/catch_amalgamated.hpp>

TEST_CASE("placeholder config_io") { CHECK(true); }
