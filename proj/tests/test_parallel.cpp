#include "equistrat/parallel.hpp"

#include <doctest.h>

#include <cstdlib>
#include <stdexcept>
#include <vector>

using namespace equistrat;

namespace {

struct EnvGuard {
  std::string saved;
  bool had = false;
  EnvGuard() {
    if (const char* v = std::getenv("EQUISTRAT_THREADS")) {
      had = true;
      saved = v;
    }
  }
  ~EnvGuard() {
    if (had) setenv("EQUISTRAT_THREADS", saved.c_str(), 1);
    else unsetenv("EQUISTRAT_THREADS");
  }
};

}  // namespace

TEST_CASE("thread cap from the environment") {
  EnvGuard g;
  setenv("EQUISTRAT_THREADS", "1", 1);
  CHECK(thread_count() == 1);
  setenv("EQUISTRAT_THREADS", "3", 1);
  CHECK(thread_count() >= 1);
  CHECK(thread_count() <= 3);
  setenv("EQUISTRAT_THREADS", "zero", 1);
  CHECK(thread_count() >= 1);
}

TEST_CASE("each index runs exactly once") {
  EnvGuard g;
  for (const char* cap : {"1", "4"}) {
    setenv("EQUISTRAT_THREADS", cap, 1);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
  }
  parallel_for(0, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("exceptions propagate after the loop") {
  std::vector<int> hits(50, 0);
  CHECK_THROWS_AS(parallel_for(hits.size(),
                               [&](std::size_t i) {
                                 hits[i] = 1;
                                 if (i == 17) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}
