#pragma once

// Bipartite composite states over PTQM / SQM subsystem pairs: full and
// reduced density matrices under mixed inner-product conventions, local
// time evolution, and the von Neumann entanglement entropy.

#include <array>
#include <optional>

#include "ptq/ptqm.hpp"

namespace ptq {

// A cross-check between two algebraically equal routes failed.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Either a PT-symmetric two-level system or the standard sigma_x qubit
// with the Dirac convention.
class SubsystemKind {
 public:
  static SubsystemKind pt(const PTParams& params) { return SubsystemKind(params); }
  static SubsystemKind standard() { return SubsystemKind(); }

  bool is_pt() const { return params_.has_value(); }
  const PTParams& pt_params() const;

  PhaseClass phase() const;
  // phi of the subsystem convention (0 for Standard).
  double phi() const;
  InnerProduct convention() const;
  // Basis kets: PT -> CPT-normalized {psi_+, psi_-}; Standard -> the
  // sigma_x eigenbasis {[1,-1]/sqrt2, [1,1]/sqrt2}.
  std::array<CVec, 2> basis() const;
  // Eigenvalues in basis order: PT -> (+sqrt(z^2-g^2), -sqrt(..));
  // Standard -> (-1, +1). Broken PT -> (+i s, -i s), s = sqrt(g^2-z^2).
  std::array<cplx, 2> spectrum() const;
  // Metric of the subsystem convention (eta for PT, I for Standard).
  CMat metric() const;

 private:
  SubsystemKind() = default;
  explicit SubsystemKind(const PTParams& p) : params_(p) {}
  std::optional<PTParams> params_;
};

enum class Side { Left, Right };

class BipartiteState {
 public:
  // coeffs(n, m) multiplies |u_n> (x) |v_m>.
  using Coeffs = std::array<std::array<cplx, 2>, 2>;

  // Renormalizes the coefficients to unit Frobenius norm. PT kinds
  // must be unbroken unless allow_broken is set.
  static BipartiteState make(const Coeffs& coeffs, const SubsystemKind& left,
                             const SubsystemKind& right, bool allow_broken = false);

  const Coeffs& coeffs() const { return c_; }
  const SubsystemKind& left() const { return left_; }
  const SubsystemKind& right() const { return right_; }
  // Set when a broken-phase evolution produced non-unit coefficients.
  bool non_unitary() const { return non_unitary_; }
  // Frobenius norm of the coefficient matrix (1 unless non_unitary).
  double coeff_norm() const;

 private:
  BipartiteState(Coeffs c, SubsystemKind l, SubsystemKind r, bool non_unitary)
      : c_(c), left_(std::move(l)), right_(std::move(r)), non_unitary_(non_unitary) {}

  Coeffs c_{};
  SubsystemKind left_, right_;
  bool non_unitary_ = false;

  friend BipartiteState evolve(const BipartiteState&, Side, double, bool);
};

// rho_{1,2} = sum C_ab C*_nm |u_a><u_n|_conv1 (x) |v_b><v_m|_conv2,
// each bra taken in its subsystem's convention. Unit trace.
CMat full_density(const BipartiteState& state);

// Partial trace of full_density under the kron index convention.
CMat reduced_density(const BipartiteState& state, Side keep);

// Closed-form reduced density matrix (1/(2 cos phi)) [[N11,N12],[N21,N22]]
// built from the coefficient Gram terms.
struct ReducedDensityClosedForm {
  cplx alpha, beta, gamma_c, delta;  // gamma_c = conj(beta), alpha+delta = 1
  cplx n11, n12, n21, n22;
  double phi;

  CMat matrix() const;
};

ReducedDensityClosedForm reduced_closed_form(const BipartiteState& state, Side keep);

// Reduced-density eigenvalues, independent of the subsystem parameters:
// omega_pm = (1 +- sqrt(1 - 4|C11 C22 - C12 C21|^2)) / 2.
struct Spectrum2 {
  double omega_plus;
  double omega_minus;
};

Spectrum2 reduced_spectrum_closed_form(const BipartiteState& state);

// -sum omega log2 omega with 0 log 0 = 0; omega clamped to [0,1] after
// a -1e-12 tolerance check.
double entropy_of_spectrum(double omega_plus, double omega_minus);

// Entanglement entropy in bits, computed from the numerically reduced
// density matrix via both partial traces (they must agree to 1e-12).
double entropy(const BipartiteState& state);

// Local time evolution: C_nm -> e^{-i lambda_n t} C_nm (left side) or
// C_nm -> e^{-i lambda_m t} C_nm (right side). Unbroken/Standard sides
// apply pure phases; broken sides need allow_broken and produce a state
// tagged non-unitary.
BipartiteState evolve(const BipartiteState& state, Side side, double t,
                      bool allow_broken = false);

// full_density(evolve(state, side, t)).
CMat time_dependent_density(const BipartiteState& state, Side side, double t,
                            bool allow_broken = false);

}  // namespace ptq
