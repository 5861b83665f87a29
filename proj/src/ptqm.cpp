#include "ptq/ptqm.hpp"

#include <cmath>

namespace ptq {

PhaseClass classify_phase(const PTParams& p) {
  if (!(p.zeta > 0.0) || !(p.gamma >= 0.0) || !std::isfinite(p.gamma) ||
      !std::isfinite(p.zeta)) {
    throw ContractError("PTParams require zeta > 0 and gamma >= 0");
  }
  if (std::abs(p.gamma - p.zeta) <= 1e-10 * p.zeta) return PhaseClass::ExceptionalPoint;
  return p.gamma < p.zeta ? PhaseClass::Unbroken : PhaseClass::Broken;
}

const char* to_string(PhaseClass phase) {
  switch (phase) {
    case PhaseClass::Unbroken: return "unbroken";
    case PhaseClass::ExceptionalPoint: return "exceptional_point";
    case PhaseClass::Broken: return "broken";
  }
  return "?";
}

InnerProduct InnerProduct::dirac() {
  return InnerProduct(Kind::Dirac, 0.0, CMat::identity(2));
}

InnerProduct InnerProduct::cpt(double phi) {
  if (!(phi >= 0.0) || !(phi < M_PI / 2.0)) {
    throw ContractError("CPT convention requires phi in [0, pi/2)");
  }
  return InnerProduct(Kind::CPT, phi, CMat::identity(2));
}

InnerProduct InnerProduct::eta_metric(const CMat& eta) {
  eta.check_finite();
  return InnerProduct(Kind::Eta, 0.0, eta);
}

CVec bra(const CVec& state, const InnerProduct& conv) {
  state.check_finite();
  switch (conv.kind()) {
    case InnerProduct::Kind::Dirac:
      return state.conj();
    case InnerProduct::Kind::CPT: {
      const double sec = 1.0 / std::cos(conv.phi());
      const double tan = std::tan(conv.phi());
      // C P = [[sec, -i tan], [i tan, sec]] acting on conj(state).
      const CVec c = state.conj();
      return CVec{sec * c[0] - kI * tan * c[1], kI * tan * c[0] + sec * c[1]};
    }
    case InnerProduct::Kind::Eta:
      return (conv.eta() * state).conj();
  }
  throw ContractError("unknown inner-product kind");
}

cplx inner(const CVec& left, const CVec& right, const InnerProduct& conv) {
  return dot(bra(left, conv), right);
}

CVec normalize(const CVec& state, const InnerProduct& conv) {
  const cplx n2 = inner(state, state, conv);
  if (!(n2.real() > 0.0)) {
    throw NormalizationError("state norm is not positive", n2.real());
  }
  return (1.0 / std::sqrt(n2.real())) * state;
}

PTSystem::PTSystem(PTParams params, PhaseClass phase)
    : params_(params), phase_(phase) {
  const double g = params_.gamma, z = params_.zeta;
  h_ = CMat::mat2(kI * g, -z, -z, -kI * g);
  p_ = CMat::mat2(0.0, 1.0, 1.0, 0.0);
  if (phase_ != PhaseClass::Unbroken) return;

  phi_ = std::asin(g / z);  // principal branch, [0, pi/2)
  const double sec = 1.0 / std::cos(phi_);
  const double tan = std::tan(phi_);
  c_ = CMat::mat2(-kI * tan, sec, sec, kI * tan);
  eta_ = CMat::mat2(sec, kI * tan, -kI * tan, sec);  // (CP)^T
  lambda_ = std::sqrt(z * z - g * g);

  const double norm = 1.0 / std::sqrt(2.0 * std::cos(phi_));
  const cplx em = std::exp(-kI * phi_);
  const cplx ep = std::exp(kI * phi_);
  basis_plus_ = CVec{norm, -norm * em};
  basis_minus_ = CVec{norm, norm * ep};
}

PTSystem PTSystem::build(const PTParams& params) {
  return PTSystem(params, classify_phase(params));
}

PTSystem PTSystem::build_allow_broken(const PTParams& params) {
  return PTSystem(params, classify_phase(params));
}

void PTSystem::require_unbroken(const char* what) const {
  if (phase_ != PhaseClass::Unbroken) {
    throw PhaseError(std::string(what) + " is only defined in the unbroken phase (" +
                     to_string(phase_) + " system)");
  }
}

double PTSystem::phi() const {
  require_unbroken("phi");
  return phi_;
}

const CMat& PTSystem::c_op() const {
  require_unbroken("C operator");
  return c_;
}

const CMat& PTSystem::metric() const {
  require_unbroken("metric eta");
  return eta_;
}

const CVec& PTSystem::basis_plus() const {
  require_unbroken("CPT eigenbasis");
  return basis_plus_;
}

const CVec& PTSystem::basis_minus() const {
  require_unbroken("CPT eigenbasis");
  return basis_minus_;
}

double PTSystem::eigenvalue_plus() const {
  require_unbroken("real eigenvalue");
  return lambda_;
}

double PTSystem::eigenvalue_minus() const {
  require_unbroken("real eigenvalue");
  return -lambda_;
}

InnerProduct PTSystem::cpt_convention() const {
  require_unbroken("CPT convention");
  return InnerProduct::cpt(phi_);
}

cplx expectation(const CVec& state, const CMat& observable, const PTSystem& system) {
  const InnerProduct conv = InnerProduct::eta_metric(system.metric());
  return dot(bra(state, conv), observable * state);
}

CMat effective_density(const CVec& state, const PTSystem& system) {
  const InnerProduct conv = system.cpt_convention();
  const cplx n2 = inner(state, state, conv);
  if (std::abs(n2 - cplx(1.0)) > 1e-12) {
    throw NormalizationError("effective_density requires a CPT-normalized state",
                             n2.real());
  }
  return outer(state, bra(state, conv));
}

Factorization factorize(const PTSystem& system) {
  const double scale = -system.params().zeta * std::cos(system.phi());
  Factorization f;
  f.h_qm = CMat::mat2(0.0, scale, scale, 0.0);
  f.eta = system.metric();
  return f;
}

}  // namespace ptq
