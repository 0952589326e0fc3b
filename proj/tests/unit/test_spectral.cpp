#include <catch2/catch_amalgamated.hpp>
int placeholder_spectral = 0;
TEST_CASE("placeholder_spectral") { CHECK(true); }
