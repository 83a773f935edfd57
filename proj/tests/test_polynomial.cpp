#include "equistrat/errors.hpp"
#include "equistrat/polynomial.hpp"

#include <doctest.h>

#include <numeric>

using namespace equistrat;

TEST_CASE("monomial counts match the binomial formula") {
  for (int n = 1; n <= 6; ++n)
    for (int d = 0; d <= 5; ++d) {
      const MonomialBasis b(n, d);
      CHECK(b.size() == monomial_count(n, d));
      for (int a = 0; a < b.size(); ++a) {
        const auto& e = b.exponent(a);
        CHECK(std::accumulate(e.begin(), e.end(), 0) == d);
        CHECK(b.index_of(e) == a);
      }
    }
  CHECK(monomial_count(8, 3) == 120);
}

TEST_CASE("graded lexicographic order") {
  const MonomialBasis b(3, 2);
  const auto names = default_names(3);
  CHECK(b.monomial_string(0, names) == "x1^2");
  CHECK(b.monomial_string(1, names) == "x1*x2");
  CHECK(b.monomial_string(b.size() - 1, names) == "x3^2");
  CHECK(b.index_of({1, 1}) == -1);
}

TEST_CASE("substitution matrix transports monomials") {
  Rng rng = make_rng(1);
  for (int d = 1; d <= 4; ++d) {
    const Matrix a = random_gaussian(rng, 4, 3);
    const Matrix t = substitution_matrix(a, d);
    const Vector y = random_gaussian(rng, 3, 1).col(0);
    const auto bn = MonomialBasis::get(4, d);
    const auto bk = MonomialBasis::get(3, d);
    CHECK((bn->evaluate(a * y) - t * bk->evaluate(y)).norm() < 1e-9);
  }
}

TEST_CASE("Jacobian agrees with central differences") {
  Rng rng = make_rng(2);
  for (int d = 1; d <= 4; ++d) {
    const HomogeneousMap f(MonomialBasis::get(3, d), random_gaussian(rng, 2, static_cast<int>(monomial_count(3, d))));
    const Vector x = random_gaussian(rng, 3, 1).col(0);
    const Matrix j = f.jacobian(x);
    const double h = 1e-6;
    for (int c = 0; c < 3; ++c) {
      Vector e = Vector::Zero(3);
      e(c) = h;
      const Vector fd = (f.evaluate(x + e) - f.evaluate(x - e)) / (2 * h);
      CHECK((j.col(c) - fd).norm() < 1e-6);
    }
  }
}

TEST_CASE("homogeneity and Euler identity") {
  Rng rng = make_rng(3);
  const HomogeneousMap f(MonomialBasis::get(4, 3), random_gaussian(rng, 3, static_cast<int>(monomial_count(4, 3))));
  const Vector x = random_gaussian(rng, 4, 1).col(0);
  CHECK((f.evaluate(2.0 * x) - 8.0 * f.evaluate(x)).norm() < 1e-9);
  CHECK((f.jacobian(x) * x - 3.0 * f.evaluate(x)).norm() < 1e-9);
}

TEST_CASE("composition with projections and substitutions") {
  Rng rng = make_rng(4);
  const HomogeneousMap f(MonomialBasis::get(4, 2), random_gaussian(rng, 3, static_cast<int>(monomial_count(4, 2))));
  const Matrix p = random_gaussian(rng, 2, 3);
  const Matrix a = random_gaussian(rng, 4, 2);
  const HomogeneousMap g = f.compose(p, a);
  CHECK(g.nvars() == 2);
  CHECK(g.out_dim() == 2);
  const Vector y = random_gaussian(rng, 2, 1).col(0);
  CHECK((g.evaluate(y) - p * f.evaluate(a * y)).norm() < 1e-9);

  PolyMap pm;
  pm.nvars = 4;
  pm.out_dim = 3;
  pm.parts = {HomogeneousMap(MonomialBasis::get(4, 1), random_gaussian(rng, 3, 4)), f};
  CHECK(pm.min_degree() == 1);
  const PolyMap q = pm.compose(p, a);
  CHECK((q.evaluate(y) - p * pm.evaluate(a * y)).norm() < 1e-9);
  CHECK((q.jacobian(y) - p * pm.jacobian(a * y) * a).norm() < 1e-9);
}

TEST_CASE("polynomial strings") {
  const auto b = MonomialBasis::get(2, 2);
  Vector c(3);
  c << 2, -1, 0;
  CHECK(polynomial_string(c, *b, default_names(2)) == "2*x1^2 - x1*x2");
  CHECK(polynomial_string(Vector::Zero(3), *b, default_names(2)) == "0");
}
