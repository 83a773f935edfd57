#include "oracles.hpp"

#include "equistrat/errors.hpp"
#include "equistrat/problem.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace equistrat;

namespace {

GroupPtr builtin(const std::string& d) { return make_group(d).group; }

}  // namespace

TEST_CASE("orders of builtin groups") {
  CHECK(builtin("cyclic 1")->order() == 1);
  CHECK(builtin("cyclic 7")->order() == 7);
  CHECK(builtin("dihedral 2")->order() == 4);
  CHECK(builtin("dihedral 6")->order() == 12);
  CHECK(builtin("frobenius 13 4")->order() == 52);
  CHECK(builtin("product(frobenius 13 4, cyclic 2)")->order() == 104);
}

TEST_CASE("subgroup enumeration agrees with subset brute force") {
  for (const char* d : {"cyclic 1", "cyclic 6", "dihedral 2", "dihedral 3", "dihedral 4", "dihedral 6",
                        "product(cyclic 2, cyclic 2)", "product(cyclic 2, cyclic 4)"}) {
    const GroupPtr g = builtin(d);
    CAPTURE(d);
    CHECK(static_cast<int>(enumerate_subgroups(*g).size()) == oracle::brute_force_subgroup_count(*g));
  }
  CHECK(enumerate_subgroups(*builtin("dihedral 2")).size() == 5);
  CHECK(enumerate_subgroups(*builtin("dihedral 6")).size() == 16);
}

TEST_CASE("every enumerated subgroup is closed and contains the identity") {
  const GroupPtr g = builtin("product(frobenius 13 4, cyclic 2)");
  for (const auto& s : enumerate_subgroups(*g)) {
    REQUIRE(s.contains(0));
    for (int a : s.elements) {
      CHECK(s.contains(g->inv(a)));
      for (int b : s.elements) CHECK(s.contains(g->mult(a, b)));
    }
  }
}

TEST_CASE("conjugacy classes of the Frobenius group times Z2") {
  const GroupPtr g = builtin("product(frobenius 13 4, cyclic 2)");
  CHECK(g->num_classes() == 14);
  std::size_t total = 0;
  for (const auto& c : g->conjugacy_classes()) total += c.size();
  CHECK(total == 104);
}

TEST_CASE("words reproduce element matrices") {
  const GroupPtr g = builtin("dihedral 6");
  for (int e = 0; e < g->order(); ++e) {
    Matrix m = Matrix::Identity(g->defining_dim(), g->defining_dim());
    for (int w : g->word(e)) m = m * g->element_matrix(g->generators()[w]);
    CHECK((m - g->element_matrix(e)).norm() < 1e-9);
  }
}

TEST_CASE("normalizer of a reflection subgroup in D6") {
  const GroupPtr g = builtin("dihedral 6");
  const auto classes = subgroup_classes(*g, enumerate_subgroups(*g));
  int found = 0;
  for (const auto& c : classes) {
    if (subgroup_name(*g, c) != "Z2(k)") continue;
    ++found;
    CHECK(c.members.size() == 3);
    CHECK(normalizer(*g, c.representative).order() == 4);
  }
  CHECK(found == 1);
}

TEST_CASE("conjugates of a subgroup stay in its class") {
  const GroupPtr g = builtin("dihedral 4");
  for (const auto& c : subgroup_classes(*g, enumerate_subgroups(*g)))
    for (int x = 0; x < g->order(); ++x) {
      const Subgroup h = conjugate_subgroup(*g, c.representative, x);
      CHECK(std::find(c.members.begin(), c.members.end(), h) != c.members.end());
    }
}

TEST_CASE("generation errors") {
  Matrix shear(2, 2);
  shear << 1, 1, 0, 1;
  CHECK_THROWS_AS(generate_group({shear}), Error);
  try {
    generate_group({shear});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotOrthogonal);
  }
  Matrix irrational(2, 2);
  irrational << std::cos(1.0), -std::sin(1.0), std::sin(1.0), std::cos(1.0);
  try {
    generate_group({irrational}, 1e-9, 500);
    FAIL("expected OrderExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderExceeded);
  }
}

TEST_CASE("element lookup") {
  const GroupPtr g = builtin("dihedral 6");
  for (int e = 0; e < g->order(); ++e) CHECK(g->find_element(g->element_matrix(e)) == e);
  CHECK(g->find_element(2.0 * Matrix::Identity(2, 2)) == -1);
}
