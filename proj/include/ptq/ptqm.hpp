#pragma once

// Two-level PT-symmetric systems: Hamiltonian, parity, the C operator,
// the metric eta = (CP)^T, phase classification, and the Dirac / CPT /
// eta inner-product conventions.

#include "ptq/matrix.hpp"

namespace ptq {

// Requested a quantity that only exists in the unbroken phase.
struct PhaseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A state fed to a norm-sensitive operation was not normalized.
struct NormalizationError : std::runtime_error {
  NormalizationError(const std::string& what, double measured)
      : std::runtime_error(what), measured_norm(measured) {}
  double measured_norm;
};

struct PTParams {
  double gamma;  // gain/loss strength, >= 0
  double zeta;   // coupling, > 0
};

enum class PhaseClass { Unbroken, ExceptionalPoint, Broken };

PhaseClass classify_phase(const PTParams& p);
const char* to_string(PhaseClass phase);

// Tagged inner-product convention. Every bra/density computation names
// the convention it uses; CPT(0) and Eta(I) both reduce to Dirac.
class InnerProduct {
 public:
  enum class Kind { Dirac, CPT, Eta };

  static InnerProduct dirac();
  static InnerProduct cpt(double phi);
  static InnerProduct eta_metric(const CMat& eta);

  Kind kind() const { return kind_; }
  double phi() const { return phi_; }
  const CMat& eta() const { return eta_; }

 private:
  InnerProduct(Kind kind, double phi, CMat eta)
      : kind_(kind), phi_(phi), eta_(std::move(eta)) {}
  Kind kind_;
  double phi_;
  CMat eta_;
};

// Row covector of |state> under the convention:
//   Dirac  -> conj(state)^T
//   CPT(p) -> (C P conj(state))^T = (1/cos p)[a*-i b* sin p, b*+i a* sin p]
//   Eta(M) -> (M state)^dagger, the row form of <state| M
CVec bra(const CVec& state, const InnerProduct& conv);

// <left|right> under the convention (bra(left) . right).
cplx inner(const CVec& left, const CVec& right, const InnerProduct& conv);

// state / sqrt(<state|state>_conv). Throws NormalizationError on a
// zero or non-positive norm.
CVec normalize(const CVec& state, const InnerProduct& conv);

class PTSystem {
 public:
  // Constructs H, P and the phase class for any parameters. The CPT
  // machinery (C, eta, basis, real eigenvalues) is only defined in the
  // unbroken phase; accessors throw PhaseError elsewhere.
  static PTSystem build(const PTParams& params);
  // Broken-phase exploration: identical construction, but callers
  // signal intent explicitly instead of tripping the phase gate.
  static PTSystem build_allow_broken(const PTParams& params);

  const PTParams& params() const { return params_; }
  PhaseClass phase() const { return phase_; }
  const CMat& hamiltonian() const { return h_; }
  const CMat& parity() const { return p_; }

  // Unbroken-phase quantities (throw PhaseError otherwise).
  double phi() const;
  const CMat& c_op() const;
  const CMat& metric() const;           // eta = (CP)^T
  const CVec& basis_plus() const;       // CPT-normalized |psi_+>
  const CVec& basis_minus() const;      // CPT-normalized |psi_->
  double eigenvalue_plus() const;       // +sqrt(zeta^2 - gamma^2)
  double eigenvalue_minus() const;
  InnerProduct cpt_convention() const;

 private:
  PTSystem(PTParams params, PhaseClass phase);
  void require_unbroken(const char* what) const;

  PTParams params_;
  PhaseClass phase_;
  CMat h_{2}, p_{2}, c_{2}, eta_{2};
  CVec basis_plus_ = CVec(2);
  CVec basis_minus_ = CVec(2);
  double phi_ = 0.0;
  double lambda_ = 0.0;
};

// <state|_eta A |state> in the system's metric. For A = H on an
// eigenstate this is the real eigenvalue.
cplx expectation(const CVec& state, const CMat& observable, const PTSystem& system);

// |psi><psi|_CPT for a CPT-normalized state; unit trace, idempotent.
CMat effective_density(const CVec& state, const PTSystem& system);

struct Factorization {
  CMat h_qm{2};  // Hermitian factor, -zeta cos(phi) sigma_x
  CMat eta{2};
};

// H = H_QM * eta split of the Hamiltonian.
Factorization factorize(const PTSystem& system);

}  // namespace ptq
