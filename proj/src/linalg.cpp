#include "nopair/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "nopair/errors.hpp"

namespace nopair {

namespace {

HighReal safe_hypot(const HighReal& a, const HighReal& b) {
  const HighReal x = abs(a);
  const HighReal y = abs(b);
  const HighReal big = x > y ? x : y;
  if (big == 0) return HighReal(0);
  const HighReal small = x > y ? y : x;
  const HighReal r = small / big;
  return big * sqrt(1 + r * r);
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": matrix not square");
}

// C = L^{-1} A L^{-T}, symmetrized.
Matrix reduce_to_standard(const SymMatrix& a, const Matrix& l) {
  const std::size_t n = a.dim();
  Matrix y = a.to_dense();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < n; ++i) {
      auto yi = y.row(i);
      for (std::size_t k = 0; k < i; ++k) {
        const HighReal lik = l(i, k);
        if (lik == 0) continue;
        auto yk = y.row(k);
        for (std::size_t c = 0; c < n; ++c) yi[c] -= lik * yk[c];
      }
      const HighReal inv = 1 / l(i, i);
      for (auto& v : yi) v *= inv;
    }
    y = y.transposed();
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const HighReal m = (y(i, j) + y(j, i)) / 2;
      y(i, j) = m;
      y(j, i) = m;
    }
  }
  return y;
}

// Solves L^T X = V in place (V holds eigenvectors as columns).
void back_transform(const Matrix& l, Matrix& v) {
  const std::size_t n = l.rows();
  for (std::size_t ii = n; ii-- > 0;) {
    auto vi = v.row(ii);
    for (std::size_t k = ii + 1; k < n; ++k) {
      const HighReal lki = l(k, ii);
      if (lki == 0) continue;
      auto vk = v.row(k);
      for (std::size_t c = 0; c < vi.size(); ++c) vi[c] -= lki * vk[c];
    }
    const HighReal inv = 1 / l(ii, ii);
    for (auto& x : vi) x *= inv;
  }
}

void sort_ascending(Vector& values, Matrix& vectors) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  Vector sorted_values(n);
  Matrix sorted_vectors(vectors.rows(), n);
  for (std::size_t j = 0; j < n; ++j) {
    sorted_values[j] = values[order[j]];
    for (std::size_t r = 0; r < vectors.rows(); ++r) sorted_vectors(r, j) = vectors(r, order[j]);
  }
  values = std::move(sorted_values);
  vectors = std::move(sorted_vectors);
}

EigenDecomposition jacobi(Matrix c, const EigenOptions& options) {
  const std::size_t n = c.rows();
  Matrix v = Matrix::identity(n);
  const HighReal norm = frobenius_norm(c);
  const HighReal threshold = norm * HighReal(options.relative_threshold);

  bool converged = n <= 1 || norm == 0;
  for (std::size_t sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    HighReal off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2 * c(p, q) * c(p, q);
    if (sqrt(off) <= threshold) {
      converged = true;
      break;
    }
    const HighReal skip = threshold / HighReal(4 * n);
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const HighReal apq = c(p, q);
        if (abs(apq) <= skip) continue;
        const HighReal theta = (c(q, q) - c(p, p)) / (2 * apq);
        HighReal t = 1 / (abs(theta) + sqrt(theta * theta + 1));
        if (theta < 0) t = -t;
        const HighReal cs = 1 / sqrt(t * t + 1);
        const HighReal sn = t * cs;
        const HighReal tau = sn / (1 + cs);
        c(p, p) -= t * apq;
        c(q, q) += t * apq;
        c(p, q) = 0;
        c(q, p) = 0;
        auto rp = c.row(p);
        auto rq = c.row(q);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const HighReal g = rp[r];
          const HighReal h = rq[r];
          const HighReal ng = g - sn * (h + g * tau);
          const HighReal nh = h + sn * (g - h * tau);
          rp[r] = ng;
          rq[r] = nh;
          c(r, p) = ng;
          c(r, q) = nh;
        }
        for (std::size_t r = 0; r < n; ++r) {
          auto vr = v.row(r);
          const HighReal g = vr[p];
          const HighReal h = vr[q];
          vr[p] = g - sn * (h + g * tau);
          vr[q] = h + sn * (g - h * tau);
        }
      }
    }
  }
  if (!converged) {
    HighReal off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2 * c(p, q) * c(p, q);
    if (sqrt(off) > threshold) throw NoConvergence(options.max_sweeps);
  }
  EigenDecomposition out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = c(i, i);
  out.vectors = std::move(v);
  sort_ascending(out.values, out.vectors);
  return out;
}

// Householder tridiagonalisation and implicit QL, after the public-domain
// JAMA routines tred2/tql2. Works on the eigenvector matrix transposed so
// that the inner QL rotations touch contiguous rows.
EigenDecomposition householder_ql(const Matrix& a, const EigenOptions& options) {
  const std::size_t n = a.rows();
  EigenDecomposition out;
  if (n == 0) return out;
  Matrix vm = a;  // V(i,j) semantics as in JAMA
  auto V = [&](std::size_t i, std::size_t j) -> HighReal& { return vm(i, j); };
  Vector d(n), e(n);

  for (std::size_t j = 0; j < n; ++j) d[j] = V(n - 1, j);
  for (std::size_t i = n - 1; i > 0; --i) {
    HighReal scale = 0, h = 0;
    for (std::size_t k = 0; k < i; ++k) scale += abs(d[k]);
    if (scale == 0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = V(i - 1, j);
        V(i, j) = 0;
        V(j, i) = 0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      HighReal f = d[i - 1];
      HighReal g = sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0;
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        V(j, i) = f;
        g = e[j] + V(j, j) * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += V(k, j) * d[k];
          e[k] += V(k, j) * f;
        }
        e[j] = g;
      }
      f = 0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const HighReal hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k <= i - 1; ++k) V(k, j) -= (f * e[k] + g * d[k]);
        d[j] = V(i - 1, j);
        V(i, j) = 0;
      }
    }
    d[i] = h;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    V(n - 1, i) = V(i, i);
    V(i, i) = 1;
    const HighReal h = d[i + 1];
    if (h != 0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        HighReal g = 0;
        for (std::size_t k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
        for (std::size_t k = 0; k <= i; ++k) V(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) V(k, i + 1) = 0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = V(n - 1, j);
    V(n - 1, j) = 0;
  }
  V(n - 1, n - 1) = 1;
  e[0] = 0;

  // QL on the tridiagonal (d, e); rotations act on rows of W = V^T.
  Matrix w = vm.transposed();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0;
  HighReal f = 0, tst1 = 0;
  const HighReal eps = epsilon();
  const std::size_t max_iter = std::max<std::size_t>(30, options.max_sweeps) * n;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, HighReal(abs(d[l]) + abs(e[l])));
    std::size_t m = l;
    while (m < n) {
      if (abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m == n) m = n - 1;
    if (m > l) {
      std::size_t iter = 0;
      do {
        if (++iter > max_iter) throw NoConvergence(iter);
        HighReal g = d[l];
        HighReal p = (d[l + 1] - g) / (2 * e[l]);
        HighReal r = safe_hypot(p, HighReal(1));
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const HighReal dl1 = d[l + 1];
        HighReal h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;
        p = d[m];
        HighReal c = 1, c2 = c, c3 = c;
        const HighReal el1 = e[l + 1];
        HighReal s = 0, s2 = 0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = safe_hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          auto wa = w.row(ii + 1);
          auto wb = w.row(ii);
          for (std::size_t k = 0; k < n; ++k) {
            const HighReal hk = wa[k];
            wa[k] = s * wb[k] + c * hk;
            wb[k] = c * wb[k] - s * hk;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0;
  }
  out.values = std::move(d);
  out.vectors = w.transposed();
  sort_ascending(out.values, out.vectors);
  return out;
}

EigenDecomposition solve_standard(const Matrix& c, const EigenOptions& options) {
  return options.method == EigenMethod::jacobi ? jacobi(c, options) : householder_ql(c, options);
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto oi = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const HighReal aik = a(i, k);
      if (aik == 0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) oi[j] += aik * bk[j];
    }
  }
  return out;
}

Vector operator*(const Matrix& a, std::span<const HighReal> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), x);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference: shape mismatch");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

HighReal max_abs(const Matrix& m) {
  HighReal best = 0;
  for (const auto& v : m.data()) best = std::max(best, HighReal(abs(v)));
  return best;
}

HighReal frobenius_norm(const Matrix& m) {
  HighReal sum = 0;
  for (const auto& v : m.data()) sum += v * v;
  return sqrt(sum);
}

HighReal dot(std::span<const HighReal> a, std::span<const HighReal> b) {
  HighReal sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

SymMatrix SymMatrix::symmetrized(const Matrix& m) {
  require_square(m, "SymMatrix::symmetrized");
  SymMatrix out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, (m(i, j) + m(j, i)) / 2);
  return out;
}

Matrix SymMatrix::to_dense() const {
  Matrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      m(i, j) = (*this)(i, j);
      m(j, i) = m(i, j);
    }
  return m;
}

HighReal SymMatrix::max_abs() const {
  HighReal best = 0;
  for (const auto& v : data_) best = std::max(best, HighReal(abs(v)));
  return best;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("SymMatrix sum: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

SymMatrix& SymMatrix::operator*=(const HighReal& factor) {
  for (auto& v : data_) v *= factor;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }

SymMatrix operator*(const HighReal& factor, SymMatrix a) { return a *= factor; }

HighReal bilinear(const SymMatrix& a, std::span<const HighReal> x, std::span<const HighReal> y) {
  HighReal sum = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (x[i] == 0) continue;
    HighReal row = 0;
    for (std::size_t j = 0; j < a.dim(); ++j) row += a(i, j) * y[j];
    sum += x[i] * row;
  }
  return sum;
}

SymMatrix congruence(const SymMatrix& a, const Matrix& v) {
  if (v.rows() != a.dim()) throw std::invalid_argument("congruence: shape mismatch");
  const Matrix av = a.to_dense() * v;
  SymMatrix out(v.cols());
  for (std::size_t i = 0; i < v.cols(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      HighReal s1 = 0, s2 = 0;
      for (std::size_t r = 0; r < v.rows(); ++r) {
        s1 += v(r, i) * av(r, j);
        s2 += v(r, j) * av(r, i);
      }
      out.set(i, j, (s1 + s2) / 2);
    }
  }
  return out;
}

Matrix cholesky(const SymMatrix& s) {
  const std::size_t n = s.dim();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto lj = l.row(j);
    HighReal sum = s(j, j);
    for (std::size_t k = 0; k < j; ++k) sum -= lj[k] * lj[k];
    if (!(sum > 0)) throw NonPositiveDefinite(j);
    const HighReal pivot = sqrt(sum);
    lj[j] = pivot;
    for (std::size_t i = j + 1; i < n; ++i) {
      auto li = l.row(i);
      HighReal acc = s(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= li[k] * lj[k];
      li[j] = acc / pivot;
    }
  }
  return l;
}

EigenDecomposition geneig_sym(const SymMatrix& a, const SymMatrix& s, const EigenOptions& options) {
  if (a.dim() != s.dim()) throw std::invalid_argument("geneig_sym: dimension mismatch");
  const Matrix l = cholesky(s);
  EigenDecomposition out = solve_standard(reduce_to_standard(a, l), options);
  back_transform(l, out.vectors);
  return out;
}

EigenDecomposition eig_sym(const SymMatrix& a, const EigenOptions& options) {
  return solve_standard(a.to_dense(), options);
}

EigenPair lowest_eigenpair(const SymMatrix& a, const SymMatrix& s) {
  EigenOptions options;
  options.method = EigenMethod::householder_ql;
  EigenDecomposition all = geneig_sym(a, s, options);
  return {all.values.front(), all.vectors.column(0)};
}

LeastSquaresResult least_squares(const Matrix& design, std::span<const HighReal> rhs,
                                 double conditioning_floor) {
  const std::size_t m = design.rows();
  const std::size_t k = design.cols();
  if (rhs.size() != m) throw std::invalid_argument("least_squares: rhs length mismatch");
  if (m < k) throw std::invalid_argument("least_squares: fewer rows than unknowns");

  Matrix a = design;
  Vector b(rhs.begin(), rhs.end());
  Vector column_norm(k);
  for (std::size_t j = 0; j < k; ++j) {
    HighReal sum = 0;
    for (std::size_t i = 0; i < m; ++i) sum += a(i, j) * a(i, j);
    column_norm[j] = sqrt(sum);
  }

  for (std::size_t j = 0; j < k; ++j) {
    HighReal norm = 0;
    for (std::size_t i = j; i < m; ++i) norm += a(i, j) * a(i, j);
    norm = sqrt(norm);
    if (!(norm > HighReal(conditioning_floor) * column_norm[j])) throw RankDeficient(j);
    const HighReal alpha = a(j, j) > 0 ? HighReal(-norm) : norm;
    Vector v(m - j);
    for (std::size_t i = j; i < m; ++i) v[i - j] = a(i, j);
    v[0] -= alpha;
    const HighReal vnorm2 = dot(v, v);
    if (vnorm2 != 0) {
      for (std::size_t c = j; c < k; ++c) {
        HighReal proj = 0;
        for (std::size_t i = j; i < m; ++i) proj += v[i - j] * a(i, c);
        proj = 2 * proj / vnorm2;
        for (std::size_t i = j; i < m; ++i) a(i, c) -= proj * v[i - j];
      }
      HighReal proj = 0;
      for (std::size_t i = j; i < m; ++i) proj += v[i - j] * b[i];
      proj = 2 * proj / vnorm2;
      for (std::size_t i = j; i < m; ++i) b[i] -= proj * v[i - j];
    }
    a(j, j) = alpha;
  }

  LeastSquaresResult out;
  out.coefficients.assign(k, HighReal(0));
  for (std::size_t jj = k; jj-- > 0;) {
    HighReal acc = b[jj];
    for (std::size_t c = jj + 1; c < k; ++c) acc -= a(jj, c) * out.coefficients[c];
    out.coefficients[jj] = acc / a(jj, jj);
  }
  HighReal ss = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const HighReal r = dot(design.row(i), out.coefficients) - rhs[i];
    ss += r * r;
  }
  out.rms_residual = sqrt(ss / HighReal(m));
  return out;
}

}  // namespace nopair
