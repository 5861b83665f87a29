#pragma once

// Dense complex linear algebra for the fixed dimensions 2 and 4:
// arithmetic, closed-form 2x2 eigendecomposition, spectral matrix
// exponential, Kronecker products and partial traces.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace ptq {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

// Contract violations (dimension mismatch, non-finite input).
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_finite(const cplx& z);

// Dense complex vector of dimension 2 or 4.
class CVec {
 public:
  explicit CVec(int dim);
  CVec(std::initializer_list<cplx> entries);

  int dim() const { return dim_; }
  cplx& operator[](int i) { return a_[static_cast<std::size_t>(i)]; }
  const cplx& operator[](int i) const { return a_[static_cast<std::size_t>(i)]; }

  double norm() const;       // Euclidean
  double norm_inf() const;   // max |entry|

  CVec conj() const;

  void check_finite() const;

 private:
  int dim_;
  std::array<cplx, 4> a_{};
};

CVec operator+(const CVec& x, const CVec& y);
CVec operator-(const CVec& x, const CVec& y);
CVec operator*(const cplx& s, const CVec& x);

// Plain bilinear sum x_i * y_i (no conjugation; bras carry their own).
cplx dot(const CVec& x, const CVec& y);
// Dirac inner product, conj(x) . y.
cplx vdot(const CVec& x, const CVec& y);

// Dense complex matrix of dimension 2 or 4, row-major.
class CMat {
 public:
  explicit CMat(int dim);
  // Row-major 2x2 initializer.
  static CMat mat2(cplx m00, cplx m01, cplx m10, cplx m11);
  static CMat identity(int dim);
  static CMat zero(int dim);

  int dim() const { return dim_; }
  cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * dim_ + j)]; }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i * dim_ + j)];
  }

  cplx trace() const;
  cplx det2() const;   // dim 2 only
  double norm_inf() const;  // max |entry|

  CMat transpose() const;
  CMat conj() const;
  CMat adjoint() const;

  void check_finite() const;

 private:
  int dim_;
  std::array<cplx, 16> a_{};
};

CMat operator+(const CMat& x, const CMat& y);
CMat operator-(const CMat& x, const CMat& y);
CMat operator*(const cplx& s, const CMat& x);
CMat mat_mul(const CMat& a, const CMat& b);
CMat operator*(const CMat& a, const CMat& b);
CVec operator*(const CMat& m, const CVec& v);

// ket . row-covector outer product.
CMat outer(const CVec& ket, const CVec& bra_row);

// 2x2 inverse via the adjugate.
CMat inverse2(const CMat& m);

struct EigenDecomposition2 {
  std::array<cplx, 2> eigenvalues;   // descending Re, then descending Im
  std::array<CVec, 2> eigenvectors;  // unit Dirac norm
  bool degenerate = false;
};

// Closed-form eigendecomposition of a 2x2 matrix. The roots of
// lambda^2 - tr*lambda + det come from the stable quadratic formula
// (larger-magnitude root first, companion via det/lambda). Defective
// matrices come back with degenerate=true and a repeated eigenvector.
EigenDecomposition2 eig2(const CMat& m);

// e^{scale*m} for a 2x2 matrix. Spectral when the spectrum is simple,
// scaling-and-squaring Taylor fallback when degenerate.
CMat mat_exp_spectral(const CMat& m, const cplx& scale);

// Kronecker products with the composite index convention k = 2*i + j
// (i indexes the first factor).
CMat kron(const CMat& a, const CMat& b);
CVec kron_vec(const CVec& a, const CVec& b);

enum class Subsystem { First, Second };

// Contract one subsystem of a 4x4 matrix under the kron convention.
CMat partial_trace(const CMat& rho, Subsystem traced_out);

}  // namespace ptq
