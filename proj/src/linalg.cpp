#include "sieig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sieig {

namespace {

void require_finite(const std::vector<double>& values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream os;
      os << what << " entry " << i << " is not finite";
      throw InvalidInputError(os.str());
    }
  }
}

double euclidean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

Vec::Vec(std::vector<double> values) : values_(std::move(values)) {
  require_finite(values_, "vector");
}

Vec Vec::zeros(std::size_t n) { return Vec(std::vector<double>(n, 0.0)); }

Vec Vec::unit(std::size_t n, std::size_t j) {
  std::vector<double> v(n, 0.0);
  v.at(j) = 1.0;
  return Vec(std::move(v));
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << "dot: dimension mismatch, " << a.size() << " vs " << b.size();
    throw DimensionError(os.str());
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return euclidean(a.values()); }

DenseSymMatrix::DenseSymMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n_ < 1) throw InvalidInputError("matrix dimension must be >= 1");
  if (entries_.size() != n_ * n_) {
    std::ostringstream os;
    os << "matrix storage has " << entries_.size() << " entries, expected "
       << n_ * n_;
    throw DimensionError(os.str());
  }
  require_finite(entries_, "matrix");
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (entries_[i * n_ + j] != entries_[j * n_ + i]) {
        std::ostringstream os;
        os << "matrix not symmetric at (" << i << "," << j << ")";
        throw InvalidInputError(os.str());
      }
    }
  }
  double s = 0.0;
  for (double v : entries_) s += v * v;
  fro_ = std::sqrt(s);
}

DenseSymMatrix DenseSymMatrix::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return DenseSymMatrix(n, std::move(e));
}

DenseSymMatrix DenseSymMatrix::diagonal(const std::vector<double>& d) {
  const std::size_t n = d.size();
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
  return DenseSymMatrix(n, std::move(e));
}

Vec matvec(const DenseSymMatrix& A, const Vec& x) {
  if (x.size() != A.size()) {
    std::ostringstream os;
    os << "matvec: matrix is " << A.size() << "x" << A.size()
       << " but vector has dimension " << x.size();
    throw DimensionError(os.str());
  }
  const std::size_t n = A.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return Vec(std::move(y));
}

double a_norm(const DenseSymMatrix& A, const Vec& x) {
  const double q = dot(x, matvec(A, x));
  const double scale = dot(x, x);
  if (q < -1e-12 * scale) {
    std::ostringstream os;
    os << "a_norm: x^T A x = " << q << " is negative; matrix is indefinite";
    throw IndefiniteError(os.str());
  }
  return std::sqrt(std::max(q, 0.0));
}

std::vector<Vec> gram_schmidt(const std::vector<Vec>& columns) {
  std::vector<std::vector<double>> q;
  q.reserve(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != columns[0].size()) {
      std::ostringstream os;
      os << "gram_schmidt: column " << c << " has dimension "
         << columns[c].size() << ", expected " << columns[0].size();
      throw DimensionError(os.str());
    }
    std::vector<double> v = columns[c].values();
    const double original = euclidean(v);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qi : q) {
        double h = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) h += qi[k] * v[k];
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= h * qi[k];
      }
    }
    const double remaining = euclidean(v);
    if (original == 0.0 || remaining < 1e-12 * original) {
      std::ostringstream os;
      os << "gram_schmidt: column " << c
         << " is numerically dependent on previous columns (norm fell from "
         << original << " to " << remaining << ")";
      throw RankDeficiencyError(c, os.str());
    }
    for (auto& x : v) x /= remaining;
    q.push_back(std::move(v));
  }
  std::vector<Vec> out;
  out.reserve(q.size());
  for (auto& v : q) out.emplace_back(std::move(v));
  return out;
}

Vec shifted_lu_solve(const DenseSymMatrix& A, double tau, const Vec& b) {
  const std::size_t n = A.size();
  if (b.size() != n) {
    std::ostringstream os;
    os << "shifted_lu_solve: matrix is " << n << "x" << n
       << " but right-hand side has dimension " << b.size();
    throw DimensionError(os.str());
  }
  std::vector<double> m = A.entries();
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] -= tau;
  std::vector<double> x = b.values();
  const double pivot_floor = 1e-14 * A.frobenius_norm();

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::fabs(m[row * n + col]) > std::fabs(m[piv * n + col])) piv = row;
    }
    if (std::fabs(m[piv * n + col]) <= pivot_floor) {
      std::ostringstream os;
      os << "shifted_lu_solve: A - tau*I singular to working precision at "
            "shift tau = "
         << tau;
      throw NearSingularShiftError(tau, os.str());
    }
    if (piv != col) {
      for (std::size_t k = col; k < n; ++k)
        std::swap(m[col * n + k], m[piv * n + k]);
      std::swap(x[col], x[piv]);
    }
    const double d = m[col * n + col];
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = m[row * n + col] / d;
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) m[row * n + k] -= f * m[col * n + k];
      x[row] -= f * x[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= m[i * n + k] * x[k];
    x[i] = s / m[i * n + i];
  }
  return Vec(std::move(x));
}

EigenDecomposition jacobi_eigensolve(const DenseSymMatrix& A) {
  const std::size_t n = A.size();
  std::vector<double> a = A.entries();
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
  };

  const double stop = 1e-14 * A.frobenius_norm();
  double off = off_norm();
  int sweep = 0;
  while (off > stop && sweep < 100) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = a[p * n + k] = c * akp - s * akq;
          a[k * n + q] = a[q * n + k] = s * akp + c * akq;
        }
        a[p * n + p] -= t * apq;
        a[q * n + q] += t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
    ++sweep;
    off = off_norm();
  }
  if (off > stop) {
    std::ostringstream os;
    os << "jacobi_eigensolve: off-diagonal norm " << off
       << " after 100 sweeps (target " << stop << ")";
    throw ConvergenceError(off, os.str());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i] < a[j * n + j];
  });

  EigenDecomposition out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t j = order[r];
    out.eigenvalues.push_back(a[j * n + j]);
    std::vector<double> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v[k * n + j];
    std::size_t lead = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (std::fabs(col[k]) > std::fabs(col[lead])) lead = k;
    if (col[lead] < 0.0)
      for (auto& x : col) x = -x;
    out.eigenvectors.emplace_back(std::move(col));
  }
  return out;
}

}  // namespace sieig
