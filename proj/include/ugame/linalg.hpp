#pragma once

// Dense complex linear algebra for the small matrices used throughout the
// game: states, unitaries, POVM elements and SDP slacks (side <= ~64).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ugame {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;

class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

class CMatrix {
 public:
  CMatrix() = default;

  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw LinalgError("CMatrix: dimensions must be positive");
  }

  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw LinalgError("CMatrix: dimensions must be positive");
    if (data_.size() != rows * cols) throw LinalgError("CMatrix: entry count does not match rows*cols");
    for (const auto& z : data_)
      if (!is_finite(z)) throw LinalgError("CMatrix: non-finite entry");
  }

  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    if (rows_ == 0 || cols_ == 0) throw LinalgError("CMatrix: dimensions must be positive");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw LinalgError("CMatrix: ragged initializer");
      for (const auto& z : r) {
        if (!is_finite(z)) throw LinalgError("CMatrix: non-finite entry");
        data_.push_back(z);
      }
    }
  }

  static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(std::span<const double> values) {
    CMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  /// |v><w|
  static CMatrix outer(std::span<const Complex> v, std::span<const Complex> w) {
    CMatrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::span<const Complex> entries() const { return data_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  CMatrix adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  Complex trace() const {
    require_square("trace");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  bool is_hermitian(double tol = kHermitianTol) const {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r; c < cols_; ++c)
        if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) >= tol) return false;
    return true;
  }

  /// (M + M^dagger) / 2
  CMatrix hermitian_part() const {
    require_square("hermitian_part");
    CMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        out(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
    return out;
  }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(double s, CMatrix a) { return a *= Complex(s); }
  friend CMatrix operator*(CMatrix a, double s) { return a *= Complex(s); }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw LinalgError("CMatrix: product dimension mismatch");
    CMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::vector<Complex> operator*(const CMatrix& a, std::span<const Complex> v) {
    if (a.cols_ != v.size()) throw LinalgError("CMatrix: matrix-vector dimension mismatch");
    std::vector<Complex> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  void require_square(const char* what) const {
    if (!is_square()) throw LinalgError(std::string("CMatrix: ") + what + " requires a square matrix");
  }
  void require_same_shape(const CMatrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw LinalgError(std::string("CMatrix: shape mismatch in ") + what);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw LinalgError("inner: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm(std::span<const Complex> v) { return std::sqrt(std::real(inner(v, v))); }

/// Multiplies v by the phase that makes its first component with modulus
/// above `threshold` real and non-negative.
inline void canonicalize_phase(std::span<Complex> v, double threshold = 1e-10) {
  for (const auto& z : v) {
    if (std::abs(z) > threshold) {
      const Complex phase = std::conj(z) / std::abs(z);
      for (auto& w : v) w *= phase;
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// PureState

class PureState {
 public:
  static constexpr double kNormTol = 1e-12;

  /// Normalizes and applies the canonical phase. Throws on a zero vector.
  static PureState normalized(std::vector<Complex> amplitudes) {
    if (amplitudes.empty()) throw LinalgError("PureState: empty amplitude vector");
    for (const auto& z : amplitudes)
      if (!is_finite(z)) throw LinalgError("PureState: non-finite amplitude");
    const double n = norm(amplitudes);
    if (!(n > 1e-300)) throw LinalgError("PureState: zero vector cannot be normalized");
    for (auto& z : amplitudes) z /= n;
    canonicalize_phase(amplitudes);
    return PureState(std::move(amplitudes));
  }

  /// Requires unit norm within kNormTol; applies the canonical phase.
  static PureState from_unit(std::vector<Complex> amplitudes) {
    if (amplitudes.empty()) throw LinalgError("PureState: empty amplitude vector");
    if (std::abs(norm(amplitudes) - 1.0) > kNormTol) throw LinalgError("PureState: amplitudes are not unit norm");
    canonicalize_phase(amplitudes);
    return PureState(std::move(amplitudes));
  }

  static PureState basis(std::size_t dim, std::size_t k) {
    if (k >= dim) throw LinalgError("PureState: basis index out of range");
    std::vector<Complex> a(dim);
    a[k] = 1.0;
    return PureState(std::move(a));
  }

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  CMatrix density() const { return CMatrix::outer(amplitudes_, amplitudes_); }

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  explicit PureState(std::vector<Complex> a) : amplitudes_(std::move(a)) {}
  std::vector<Complex> amplitudes_;
};

// ---------------------------------------------------------------------------
// Fourier matrix: F[k][j] = omega^{jk} / sqrt(d), omega = exp(2 pi i / d).

inline Complex root_of_unity(std::size_t d, long long power) {
  const long long m = static_cast<long long>(d);
  const long long r = ((power % m) + m) % m;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(d);
  return {std::cos(angle), std::sin(angle)};
}

inline CMatrix fourier_matrix(std::size_t d) {
  if (d == 0) throw LinalgError("fourier_matrix: dimension must be positive");
  CMatrix f(d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) f(k, j) = s * root_of_unity(d, static_cast<long long>(j * k));
  return f;
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic complex Jacobi).

struct EigenSystem {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column i pairs with values[i]
};

namespace detail {

inline bool lex_less(const CMatrix& v, std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < v.rows(); ++r) {
    const Complex x = v(r, a), y = v(r, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace detail

inline EigenSystem eig_hermitian(const CMatrix& m) {
  if (!m.is_hermitian()) throw LinalgError("eig_hermitian: matrix is not Hermitian");
  const std::size_t n = m.rows();
  CMatrix a = m.hermitian_part();
  CMatrix v = CMatrix::identity(n);

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale += std::norm(a(i, j));
  scale = std::sqrt(scale);

  for (int sweep = 0; sweep < 100 && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-17 * scale) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) continue;
        const Complex ph = apq / r;  // e^{i phi}
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * r, aqq - app);
        const double c = std::cos(theta), s = std::sin(theta);
        const Complex e = std::conj(ph);  // e^{-i phi}
        // J restricted to (p,q): [[c, s], [-s e, c e]]
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * e * akq;
          a(k, q) = s * akp + c * e * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * std::conj(e) * aqk;
          a(q, k) = s * apk + c * std::conj(e) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * e * vkq;
          v(k, q) = s * vkp + c * e * vkq;
        }
      }
    }
  }

  // Canonical phase per eigenvector, then order: descending value, ties
  // (within 1e-12) broken by lexicographic (re, im) order of the vectors.
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = v(r, j);
    canonicalize_phase(col);
    for (std::size_t r = 0; r < n; ++r) v(r, j) = col[r];
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double lx = a(x, x).real(), ly = a(y, y).real();
    if (std::abs(lx - ly) > 1e-12) return lx > ly;
    return detail::lex_less(v, x, y);
  });

  EigenSystem out{std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, i) = v(r, order[i]);
  }
  return out;
}

inline std::vector<double> eigenvalues_hermitian(const CMatrix& m) { return eig_hermitian(m).values; }

inline double min_eigenvalue(const CMatrix& m) { return eig_hermitian(m).values.back(); }
inline double max_eigenvalue(const CMatrix& m) { return eig_hermitian(m).values.front(); }

/// V f(Lambda) V^dagger for a Hermitian M.
template <class F>
CMatrix apply_spectral(const CMatrix& m, F&& f) {
  const EigenSystem es = eig_hermitian(m);
  const std::size_t n = m.rows();
  CMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(es.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += fk * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  return out.hermitian_part();
}

/// |M| = sqrt(M^dagger M) for Hermitian M.
inline CMatrix abs_hermitian(const CMatrix& m) {
  return apply_spectral(m, [](double x) { return std::abs(x); });
}

inline double trace_norm_hermitian(const CMatrix& m) {
  if (!m.is_hermitian()) throw LinalgError("trace_norm_hermitian: matrix is not Hermitian");
  double s = 0.0;
  for (double x : eig_hermitian(m).values) s += std::abs(x);
  return s;
}

// ---------------------------------------------------------------------------
// Bipartite helpers. Index convention: |a>|b> -> a * dB + b.

enum class Keep { A, B };

inline CMatrix partial_trace(const CMatrix& m, std::size_t dA, std::size_t dB, Keep keep) {
  if (dA == 0 || dB == 0 || !m.is_square() || m.rows() != dA * dB)
    throw LinalgError("partial_trace: matrix side must equal dA*dB");
  if (keep == Keep::A) {
    CMatrix out(dA, dA);
    for (std::size_t a = 0; a < dA; ++a)
      for (std::size_t a2 = 0; a2 < dA; ++a2)
        for (std::size_t b = 0; b < dB; ++b) out(a, a2) += m(a * dB + b, a2 * dB + b);
    return out;
  }
  CMatrix out(dB, dB);
  for (std::size_t b = 0; b < dB; ++b)
    for (std::size_t b2 = 0; b2 < dB; ++b2)
      for (std::size_t a = 0; a < dA; ++a) out(b, b2) += m(a * dB + b, a * dB + b2);
  return out;
}

/// Singular values of the dA x dB amplitude matrix, descending, min(dA,dB) of them.
inline std::vector<double> schmidt_coefficients(const PureState& psi, std::size_t dA, std::size_t dB) {
  if (dA == 0 || dB == 0 || psi.dim() != dA * dB)
    throw LinalgError("schmidt_coefficients: state dimension must equal dA*dB");
  CMatrix amp(dA, dB);
  for (std::size_t a = 0; a < dA; ++a)
    for (std::size_t b = 0; b < dB; ++b) amp(a, b) = psi[a * dB + b];
  const CMatrix gram = dA <= dB ? amp * amp.adjoint() : amp.adjoint() * amp;
  auto values = eig_hermitian(gram.hermitian_part()).values;
  for (auto& x : values) x = std::sqrt(std::max(x, 0.0));
  return values;
}

// ---------------------------------------------------------------------------
// Density matrix checks.

struct DensityCheck {
  double hermiticity = 0.0;  // max |M - M^dagger|
  double trace_error = 0.0;  // |Tr M - 1|
  double min_eigenvalue = 0.0;
};

inline DensityCheck check_density(const CMatrix& m) {
  if (!m.is_square()) throw LinalgError("density matrix must be square");
  DensityCheck c;
  c.hermiticity = max_abs_diff(m, m.adjoint());
  c.trace_error = std::abs(m.trace() - Complex(1.0));
  c.min_eigenvalue = eig_hermitian(m.hermitian_part()).values.back();
  return c;
}

/// Throws unless M is Hermitian, unit trace and PSD within `tol`.
inline void require_density(const CMatrix& m, double tol, const char* what) {
  const DensityCheck c = check_density(m);
  if (c.hermiticity > tol) throw LinalgError(std::string(what) + ": not Hermitian");
  if (c.trace_error > tol) throw LinalgError(std::string(what) + ": trace is not 1");
  if (c.min_eigenvalue < -tol) throw LinalgError(std::string(what) + ": not positive semidefinite");
}

// ---------------------------------------------------------------------------
// Cholesky factorization of a Hermitian positive-definite matrix. Returns
// false (leaving `lower` unspecified) when a pivot is not strictly positive.

inline bool cholesky(const CMatrix& m, CMatrix& lower) {
  const std::size_t n = m.rows();
  lower = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = m(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(lower(j, k));
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    lower(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower(i, k) * std::conj(lower(j, k));
      lower(i, j) = s / ljj;
    }
  }
  return true;
}

/// Inverse from a Cholesky factor L (M = L L^dagger).
inline CMatrix cholesky_inverse(const CMatrix& lower) {
  const std::size_t n = lower.rows();
  // Linv by forward substitution, then M^{-1} = Linv^dagger Linv.
  CMatrix linv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    linv(c, c) = 1.0 / lower(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t k = c; k < i; ++k) s -= lower(i, k) * linv(k, c);
      linv(i, c) = s / lower(i, i);
    }
  }
  return (linv.adjoint() * linv).hermitian_part();
}

inline double cholesky_logdet(const CMatrix& lower) {
  double s = 0.0;
  for (std::size_t i = 0; i < lower.rows(); ++i) s += std::log(lower(i, i).real());
  return 2.0 * s;
}

// Pauli matrices.
inline CMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline CMatrix pauli_y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
inline CMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace ugame
