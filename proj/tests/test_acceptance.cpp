#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "verify.hpp"

#include <cstdio>

TEST_CASE("acceptance suite") {
  auto results = boundinfo::verify::run_acceptance(1e-9, 0);
  REQUIRE(results.size() == 10);
  for (const auto& r : results) {
    std::printf("criterion %d [%s]: %s\n", r.id, r.name.c_str(),
                r.pass ? "PASS" : "FAIL");
    INFO("criterion ", r.id, " (", r.name, "): expected ", r.expected,
         ", observed ", r.observed);
    CHECK(r.pass);
  }
}
