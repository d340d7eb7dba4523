#include <catch_amalgamated.hpp>

#include "koppel/scenarios.hpp"

using namespace koppel;

TEST_CASE("placeholder cli") { REQUIRE(true); }
