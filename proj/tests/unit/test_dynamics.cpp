#include <catch2/catch_amalgamated.hpp>
TEST_CASE("placeholder_dynamics") { CHECK(true); }
