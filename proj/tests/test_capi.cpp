#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include "mgopt/mgopt.h"

TEST_CASE("version") { CHECK(mg_version() != nullptr); }
