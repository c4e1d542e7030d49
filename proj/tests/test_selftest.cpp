#include <sstream>

#include "doctest.h"
#include "tik/error.hpp"
#include "tik/selftest.hpp"

using namespace tik;

TEST_SUITE("selftest") {

TEST_CASE("every criterion passes at the quick level") {
  std::ostringstream log;
  const auto results = run_selftest(Level::Quick, log);
  REQUIRE(results.size() == kCriterionCount);
  for (const auto& r : results) {
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.pass);
  }
  CHECK_FALSE(log.str().empty());
}

TEST_CASE("a single criterion logs the same bytes twice") {
  std::ostringstream first, second;
  CHECK(run_criterion(4, Level::Quick, first).pass);
  CHECK(run_criterion(4, Level::Quick, second).pass);
  CHECK(first.str() == second.str());
}

TEST_CASE("level names") {
  CHECK(level_from_name("quick") == Level::Quick);
  CHECK(std::string(level_name(Level::Full)) == "full");
  CHECK_THROWS_AS(level_from_name("medium"), Error);
}

}
