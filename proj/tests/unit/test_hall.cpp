#include <catch2/catch_amalgamated.hpp>
TEST_CASE("placeholder_hall") { CHECK(true); }
