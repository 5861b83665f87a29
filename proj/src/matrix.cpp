#include "ptq/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace ptq {

bool is_finite(const cplx& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw ContractError("dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

void check_same_dim(int a, int b) {
  if (a != b) {
    throw ContractError("dimension mismatch: " + std::to_string(a) + " vs " +
                        std::to_string(b));
  }
}

}  // namespace

CVec::CVec(int dim) : dim_(dim) { check_dim(dim); }

CVec::CVec(std::initializer_list<cplx> entries) : dim_(static_cast<int>(entries.size())) {
  check_dim(dim_);
  std::copy(entries.begin(), entries.end(), a_.begin());
  check_finite();
}

double CVec::norm() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += std::norm(a_[static_cast<std::size_t>(i)]);
  return std::sqrt(s);
}

double CVec::norm_inf() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s = std::max(s, std::abs(a_[static_cast<std::size_t>(i)]));
  return s;
}

CVec CVec::conj() const {
  CVec r(dim_);
  for (int i = 0; i < dim_; ++i) r[i] = std::conj((*this)[i]);
  return r;
}

void CVec::check_finite() const {
  for (int i = 0; i < dim_; ++i) {
    if (!is_finite((*this)[i])) throw ContractError("non-finite vector entry");
  }
}

CVec operator+(const CVec& x, const CVec& y) {
  check_same_dim(x.dim(), y.dim());
  CVec r(x.dim());
  for (int i = 0; i < x.dim(); ++i) r[i] = x[i] + y[i];
  return r;
}

CVec operator-(const CVec& x, const CVec& y) {
  check_same_dim(x.dim(), y.dim());
  CVec r(x.dim());
  for (int i = 0; i < x.dim(); ++i) r[i] = x[i] - y[i];
  return r;
}

CVec operator*(const cplx& s, const CVec& x) {
  CVec r(x.dim());
  for (int i = 0; i < x.dim(); ++i) r[i] = s * x[i];
  return r;
}

cplx dot(const CVec& x, const CVec& y) {
  check_same_dim(x.dim(), y.dim());
  cplx s = 0.0;
  for (int i = 0; i < x.dim(); ++i) s += x[i] * y[i];
  return s;
}

cplx vdot(const CVec& x, const CVec& y) { return dot(x.conj(), y); }

CMat::CMat(int dim) : dim_(dim) { check_dim(dim); }

CMat CMat::mat2(cplx m00, cplx m01, cplx m10, cplx m11) {
  CMat m(2);
  m(0, 0) = m00;
  m(0, 1) = m01;
  m(1, 0) = m10;
  m(1, 1) = m11;
  m.check_finite();
  return m;
}

CMat CMat::identity(int dim) {
  CMat m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::zero(int dim) { return CMat(dim); }

cplx CMat::trace() const {
  cplx s = 0.0;
  for (int i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

cplx CMat::det2() const {
  if (dim_ != 2) throw ContractError("det2 requires dim 2");
  return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
}

double CMat::norm_inf() const {
  double s = 0.0;
  for (int i = 0; i < dim_ * dim_; ++i)
    s = std::max(s, std::abs(a_[static_cast<std::size_t>(i)]));
  return s;
}

CMat CMat::transpose() const {
  CMat r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMat CMat::conj() const {
  CMat r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(i, j));
  return r;
}

CMat CMat::adjoint() const { return conj().transpose(); }

void CMat::check_finite() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (!is_finite((*this)(i, j))) throw ContractError("non-finite matrix entry");
}

CMat operator+(const CMat& x, const CMat& y) {
  check_same_dim(x.dim(), y.dim());
  CMat r(x.dim());
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) r(i, j) = x(i, j) + y(i, j);
  return r;
}

CMat operator-(const CMat& x, const CMat& y) {
  check_same_dim(x.dim(), y.dim());
  CMat r(x.dim());
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) r(i, j) = x(i, j) - y(i, j);
  return r;
}

CMat operator*(const cplx& s, const CMat& x) {
  CMat r(x.dim());
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) r(i, j) = s * x(i, j);
  return r;
}

CMat mat_mul(const CMat& a, const CMat& b) {
  check_same_dim(a.dim(), b.dim());
  CMat r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k) {
      const cplx aik = a(i, k);
      for (int j = 0; j < a.dim(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

CMat operator*(const CMat& a, const CMat& b) { return mat_mul(a, b); }

CVec operator*(const CMat& m, const CVec& v) {
  check_same_dim(m.dim(), v.dim());
  CVec r(m.dim());
  for (int i = 0; i < m.dim(); ++i) {
    cplx s = 0.0;
    for (int j = 0; j < m.dim(); ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

CMat outer(const CVec& ket, const CVec& bra_row) {
  check_same_dim(ket.dim(), bra_row.dim());
  CMat r(ket.dim());
  for (int i = 0; i < ket.dim(); ++i)
    for (int j = 0; j < ket.dim(); ++j) r(i, j) = ket[i] * bra_row[j];
  return r;
}

CMat inverse2(const CMat& m) {
  if (m.dim() != 2) throw ContractError("inverse2 requires dim 2");
  const cplx d = m.det2();
  if (std::abs(d) == 0.0) throw ContractError("singular 2x2 matrix");
  const cplx inv = 1.0 / d;
  return CMat::mat2(inv * m(1, 1), -inv * m(0, 1), -inv * m(1, 0), inv * m(0, 0));
}

EigenDecomposition2 eig2(const CMat& m) {
  if (m.dim() != 2) throw ContractError("eig2 requires dim 2");
  const cplx tr = m.trace();
  const cplx det = m.det2();
  // tr^2 - 4 det rewritten as (m00 - m11)^2 + 4 m01 m10; the direct
  // form cancels catastrophically for nearly scalar matrices.
  const cplx diff = m(0, 0) - m(1, 1);
  const cplx disc = std::sqrt(diff * diff + 4.0 * m(0, 1) * m(1, 0));
  // Larger-magnitude root first; avoids cancellation near the
  // exceptional point where tr and disc nearly cancel.
  const cplx q = (std::abs(tr + disc) >= std::abs(tr - disc)) ? 0.5 * (tr + disc)
                                                              : 0.5 * (tr - disc);
  cplx l1, l2;
  if (std::abs(q) > 0.0) {
    l1 = q;
    l2 = det / q;
  } else {
    l1 = l2 = 0.0;
  }
  // Descending real part, then descending imaginary part.
  if (l1.real() < l2.real() ||
      (l1.real() == l2.real() && l1.imag() < l2.imag())) {
    std::swap(l1, l2);
  }

  EigenDecomposition2 ed{{l1, l2}, {CVec(2), CVec(2)}, false};
  const double tol = 1e-10 * std::max(1.0, m.norm_inf());
  ed.degenerate = std::abs(l1 - l2) <= tol;

  auto eigvec = [&](const cplx& lambda) {
    // Rows of (m - lambda I) are both orthogonal to the eigenvector;
    // pick the null-space direction with the larger magnitude.
    CVec v1{m(0, 1), lambda - m(0, 0)};
    CVec v2{lambda - m(1, 1), m(1, 0)};
    CVec v = (v1.norm() >= v2.norm()) ? v1 : v2;
    if (v.norm() == 0.0) v = CVec{1.0, 0.0};  // scalar multiple of I
    return (1.0 / v.norm()) * v;
  };
  ed.eigenvectors[0] = eigvec(l1);
  ed.eigenvectors[1] = ed.degenerate ? ed.eigenvectors[0] : eigvec(l2);
  return ed;
}

namespace {

// Scaling-and-squaring Taylor expansion, used when the spectrum is not
// simple. Order 16 after norm halving to <= 0.5 keeps the truncation
// far below double rounding.
CMat mat_exp_taylor(const CMat& m, const cplx& scale) {
  CMat a = scale * m;
  int squarings = 0;
  while (a.norm_inf() > 0.5) {
    a = cplx(0.5) * a;
    ++squarings;
  }
  CMat result = CMat::identity(m.dim());
  CMat term = CMat::identity(m.dim());
  for (int k = 1; k <= 16; ++k) {
    term = cplx(1.0 / k) * (term * a);
    result = result + term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace

CMat mat_exp_spectral(const CMat& m, const cplx& scale) {
  if (m.dim() != 2) throw ContractError("mat_exp_spectral requires dim 2");
  if (scale == cplx(0.0)) return CMat::identity(2);
  const EigenDecomposition2 ed = eig2(m);
  if (ed.degenerate) return mat_exp_taylor(m, scale);
  // exp(scale*m) = V diag(e^{scale*lambda}) V^{-1}
  CMat v(2);
  for (int i = 0; i < 2; ++i) {
    v(i, 0) = ed.eigenvectors[0][i];
    v(i, 1) = ed.eigenvectors[1][i];
  }
  const CMat vinv = inverse2(v);
  CMat d(2);
  d(0, 0) = std::exp(scale * ed.eigenvalues[0]);
  d(1, 1) = std::exp(scale * ed.eigenvalues[1]);
  return v * d * vinv;
}

CMat kron(const CMat& a, const CMat& b) {
  if (a.dim() != 2 || b.dim() != 2) throw ContractError("kron requires two 2x2 factors");
  CMat r(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

CVec kron_vec(const CVec& a, const CVec& b) {
  if (a.dim() != 2 || b.dim() != 2)
    throw ContractError("kron_vec requires two 2-vectors");
  CVec r(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[2 * i + j] = a[i] * b[j];
  return r;
}

CMat partial_trace(const CMat& rho, Subsystem traced_out) {
  if (rho.dim() != 4) throw ContractError("partial_trace requires dim 4");
  CMat r(2);
  if (traced_out == Subsystem::Second) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) r(i, j) += rho(2 * i + k, 2 * j + k);
  } else {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) r(i, j) += rho(2 * k + i, 2 * k + j);
  }
  return r;
}

}  // namespace ptq
