#include <doctest.h>

#include <random>

#include "nopair/errors.hpp"
#include "nopair/linalg.hpp"
#include "test_support.hpp"

using namespace nopair;
using nopair::testing::rel_diff;
using nopair::testing::to_double;

namespace {

HighReal pencil_residual(const SymMatrix& a, const SymMatrix& s, const EigenDecomposition& e) {
  const Matrix av = a.to_dense() * e.vectors;
  const Matrix sv = s.to_dense() * e.vectors;
  HighReal worst = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      worst = std::max(worst, HighReal(abs(av(i, j) - e.values[j] * sv(i, j))));
  return worst;
}

HighReal metric_orthonormality(const SymMatrix& s, const EigenDecomposition& e) {
  const Matrix g = e.vectors.transposed() * (s.to_dense() * e.vectors);
  return max_abs(g - Matrix::identity(s.dim()));
}

Matrix random_orthogonal(std::mt19937_64& rng, std::size_t n) {
  // Orthonormal eigenvectors of a random symmetric matrix.
  return eig_sym(nopair::testing::random_sym(rng, n)).vectors;
}

}  // namespace

TEST_CASE("cholesky of the identity is the identity") {
  const Matrix l = cholesky(SymMatrix::identity(3));
  CHECK(max_abs(l - Matrix::identity(3)) == 0);
}

TEST_CASE("cholesky of a hand-checkable 2x2") {
  SymMatrix s(2);
  s.set(0, 0, 4);
  s.set(1, 0, 2);
  s.set(1, 1, 2);
  const Matrix l = cholesky(s);
  CHECK(l(0, 0) == 2);
  CHECK(l(0, 1) == 0);
  CHECK(l(1, 0) == 1);
  CHECK(l(1, 1) == 1);
}

TEST_CASE("cholesky reproduces a random SPD matrix") {
  std::mt19937_64 rng(11);
  const SymMatrix s = nopair::testing::random_spd(rng, 20);
  const Matrix l = cholesky(s);
  const HighReal err = max_abs(l * l.transposed() - s.to_dense());
  CHECK(to_double(err) < 1e-28 * to_double(s.max_abs()));
}

TEST_CASE("cholesky rejects an indefinite matrix") {
  SymMatrix s(2);
  s.set(0, 0, 1);
  s.set(1, 0, 2);
  s.set(1, 1, 1);
  CHECK_THROWS_AS(cholesky(s), NonPositiveDefinite);
}

TEST_CASE("diagonal pencil") {
  SymMatrix a(2);
  a.set(0, 0, 2);
  a.set(1, 1, 1);
  for (auto method : {EigenMethod::jacobi, EigenMethod::householder_ql}) {
    const auto e = geneig_sym(a, SymMatrix::identity(2), {method});
    CHECK(e.values[0] == 1);
    CHECK(e.values[1] == 2);
  }
}

TEST_CASE("identity pencil A = S gives unit eigenvalues") {
  std::mt19937_64 rng(3);
  const SymMatrix s = nopair::testing::random_spd(rng, 12);
  const auto e = geneig_sym(s, s);
  for (const auto& v : e.values) CHECK(to_double(abs(v - 1)) < 1e-28);
}

TEST_CASE("random pencil residual and metric orthonormality") {
  std::mt19937_64 rng(5);
  const SymMatrix a = nopair::testing::random_sym(rng, 30);
  const SymMatrix s = nopair::testing::random_spd(rng, 30);
  for (auto method : {EigenMethod::jacobi, EigenMethod::householder_ql}) {
    const auto e = geneig_sym(a, s, {method});
    CHECK(to_double(pencil_residual(a, s, e)) < 1e-26 * to_double(a.max_abs()));
    CHECK(to_double(metric_orthonormality(s, e)) < 1e-28);
    for (std::size_t i = 1; i < e.values.size(); ++i) CHECK(e.values[i - 1] <= e.values[i]);
  }
}

TEST_CASE("Jacobi and QL agree") {
  std::mt19937_64 rng(8);
  const SymMatrix a = nopair::testing::random_sym(rng, 25);
  const SymMatrix s = nopair::testing::random_spd(rng, 25);
  const auto j = geneig_sym(a, s, {EigenMethod::jacobi});
  const auto q = geneig_sym(a, s, {EigenMethod::householder_ql});
  for (std::size_t i = 0; i < 25; ++i) CHECK(to_double(abs(j.values[i] - q.values[i])) < 1e-30);
}

TEST_CASE("eigenvalues are invariant under orthogonal congruence") {
  std::mt19937_64 rng(21);
  const std::size_t n = 16;
  const SymMatrix a = nopair::testing::random_sym(rng, n);
  const SymMatrix s = nopair::testing::random_spd(rng, n);
  const Matrix q = random_orthogonal(rng, n);
  const auto e1 = geneig_sym(a, s);
  const auto e2 = geneig_sym(congruence(a, q), congruence(s, q));
  for (std::size_t i = 0; i < n; ++i) CHECK(rel_diff(e1.values[i], e2.values[i]) < 1e-25);
}

TEST_CASE("lowest eigenpair matches the full decomposition") {
  std::mt19937_64 rng(4);
  const SymMatrix a = nopair::testing::random_sym(rng, 10);
  const SymMatrix s = nopair::testing::random_spd(rng, 10);
  const auto full = geneig_sym(a, s);
  const auto low = lowest_eigenpair(a, s);
  CHECK(to_double(abs(low.value - full.values[0])) < 1e-30);
  CHECK(to_double(abs(bilinear(s, low.vector, low.vector) - 1)) < 1e-30);
}

TEST_CASE("symmetric storage is exactly symmetric") {
  Matrix m(3, 3);
  m(0, 1) = 1;
  m(1, 0) = 3;
  const SymMatrix s = SymMatrix::symmetrized(m);
  CHECK(s(0, 1) == 2);
  CHECK(s(1, 0) == 2);
  const Matrix d = s.to_dense();
  CHECK(max_abs(d - d.transposed()) == 0);
}

TEST_CASE("least squares interpolates exact linear data") {
  Matrix design(2, 2);
  Vector rhs(2);
  for (int i = 0; i < 2; ++i) {
    design(i, 0) = 1;
    design(i, 1) = i + 1;
    rhs[i] = 2 + 3 * (i + 1);
  }
  const auto r = least_squares(design, rhs);
  CHECK(to_double(abs(r.coefficients[0] - 2)) < 1e-30);
  CHECK(to_double(abs(r.coefficients[1] - 3)) < 1e-30);
  CHECK(to_double(r.rms_residual) < 1e-30);
}

TEST_CASE("least squares on a consistent overdetermined system") {
  Matrix design(7, 3);
  Vector rhs(7);
  for (int i = 0; i < 7; ++i) {
    const HighReal x = HighReal(i) / 3;
    design(i, 0) = 1;
    design(i, 1) = x;
    design(i, 2) = x * x;
    rhs[i] = -1 + 2 * x + HighReal(0.5) * x * x;
  }
  const auto r = least_squares(design, rhs);
  CHECK(to_double(abs(r.coefficients[0] + 1)) < 1e-30);
  CHECK(to_double(abs(r.coefficients[1] - 2)) < 1e-30);
  CHECK(to_double(abs(r.coefficients[2] - HighReal(0.5))) < 1e-30);
  CHECK(to_double(r.rms_residual) < 1e-30);
}

TEST_CASE("least squares recovers synthetic alpha-expansion coefficients") {
  const Vector truth{HighReal("-0.25"), HighReal("0.046875"), HighReal("-0.1288"), HighReal("-0.0625"),
                     HighReal("0.53")};
  const HighReal a0_inv("137.035999084");
  Matrix design(21, 5);
  Vector rhs(21);
  for (int n = -50, row = 0; n <= 50; n += 5, ++row) {
    const HighReal alpha = 1 / (a0_inv + n);
    const HighReal a2 = alpha * alpha;
    const Vector cols{HighReal(1), a2, a2 * alpha, a2 * a2 * log(alpha), a2 * a2};
    for (int k = 0; k < 5; ++k) design(row, k) = cols[k];
    rhs[row] = dot(cols, truth);
  }
  const auto r = least_squares(design, rhs);
  for (int k = 0; k < 5; ++k) CHECK(rel_diff(r.coefficients[k], truth[k]) < 1e-20);
  CHECK(to_double(r.rms_residual) < 1e-30);
}

TEST_CASE("least squares rejects a rank-deficient design") {
  Matrix design(4, 2);
  Vector rhs(4);
  for (int i = 0; i < 4; ++i) {
    design(i, 0) = i;
    design(i, 1) = 2 * i;
  }
  CHECK_THROWS_AS(least_squares(design, rhs), RankDeficient);
}
