#include "ptq/bipartite.hpp"

#include <algorithm>
#include <cmath>

namespace ptq {

const PTParams& SubsystemKind::pt_params() const {
  if (!params_) throw ContractError("Standard subsystem has no PT parameters");
  return *params_;
}

PhaseClass SubsystemKind::phase() const {
  return is_pt() ? classify_phase(*params_) : PhaseClass::Unbroken;
}

double SubsystemKind::phi() const {
  if (!is_pt()) return 0.0;
  return PTSystem::build(*params_).phi();
}

InnerProduct SubsystemKind::convention() const {
  if (!is_pt()) return InnerProduct::dirac();
  return InnerProduct::cpt(phi());
}

std::array<CVec, 2> SubsystemKind::basis() const {
  if (is_pt()) {
    const PTSystem sys = PTSystem::build(*params_);
    return {sys.basis_plus(), sys.basis_minus()};
  }
  const double s = 1.0 / std::sqrt(2.0);
  return {CVec{s, -s}, CVec{s, s}};
}

std::array<cplx, 2> SubsystemKind::spectrum() const {
  if (!is_pt()) return {cplx(-1.0), cplx(1.0)};
  const double g = params_->gamma, z = params_->zeta;
  switch (classify_phase(*params_)) {
    case PhaseClass::Unbroken: {
      const double l = std::sqrt(z * z - g * g);
      return {cplx(l), cplx(-l)};
    }
    case PhaseClass::ExceptionalPoint:
      return {cplx(0.0), cplx(0.0)};
    case PhaseClass::Broken: {
      const double s = std::sqrt(g * g - z * z);
      return {kI * s, -kI * s};
    }
  }
  throw ContractError("unreachable phase");
}

CMat SubsystemKind::metric() const {
  if (!is_pt()) return CMat::identity(2);
  return PTSystem::build(*params_).metric();
}

namespace {

double frobenius(const BipartiteState::Coeffs& c) {
  double s = 0.0;
  for (const auto& row : c)
    for (const cplx& z : row) s += std::norm(z);
  return std::sqrt(s);
}

void require_evolvable(const SubsystemKind& kind, bool allow_broken) {
  if (kind.is_pt() && kind.phase() != PhaseClass::Unbroken && !allow_broken) {
    throw PhaseError(std::string("PT subsystem is ") + to_string(kind.phase()) +
                     "; unbroken phase required");
  }
}

}  // namespace

BipartiteState BipartiteState::make(const Coeffs& coeffs, const SubsystemKind& left,
                                    const SubsystemKind& right, bool allow_broken) {
  require_evolvable(left, allow_broken);
  require_evolvable(right, allow_broken);
  for (const auto& row : coeffs)
    for (const cplx& z : row)
      if (!is_finite(z)) throw ContractError("non-finite coefficient");
  const double norm = frobenius(coeffs);
  if (norm == 0.0) throw ContractError("coefficient matrix is zero");
  Coeffs c = coeffs;
  for (auto& row : c)
    for (cplx& z : row) z *= 1.0 / norm;
  return BipartiteState(c, left, right, false);
}

double BipartiteState::coeff_norm() const { return frobenius(c_); }

CMat full_density(const BipartiteState& state) {
  const auto u = state.left().basis();
  const auto v = state.right().basis();
  const InnerProduct conv1 = state.left().convention();
  const InnerProduct conv2 = state.right().convention();
  const auto& c = state.coeffs();

  CMat rho(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m) {
          const cplx w = c[a][b] * std::conj(c[n][m]);
          if (w == cplx(0.0)) continue;
          rho = rho + w * kron(outer(u[a], bra(u[n], conv1)),
                               outer(v[b], bra(v[m], conv2)));
        }
  return rho;
}

CMat reduced_density(const BipartiteState& state, Side keep) {
  return partial_trace(full_density(state),
                       keep == Side::Left ? Subsystem::Second : Subsystem::First);
}

CMat ReducedDensityClosedForm::matrix() const {
  const double w = 1.0 / (2.0 * std::cos(phi));
  return CMat::mat2(w * n11, w * n12, w * n21, w * n22);
}

ReducedDensityClosedForm reduced_closed_form(const BipartiteState& state, Side keep) {
  const auto& c = state.coeffs();
  ReducedDensityClosedForm f{};
  if (keep == Side::Left) {
    // Gram over the traced (right) index: M_an = sum_b C_ab C*_nb.
    f.alpha = c[0][0] * std::conj(c[0][0]) + c[0][1] * std::conj(c[0][1]);
    f.beta = c[0][0] * std::conj(c[1][0]) + c[0][1] * std::conj(c[1][1]);
    f.gamma_c = c[1][0] * std::conj(c[0][0]) + c[1][1] * std::conj(c[0][1]);
    f.delta = c[1][0] * std::conj(c[1][0]) + c[1][1] * std::conj(c[1][1]);
    f.phi = state.left().phi();
  } else {
    // Gram over the traced (left) index: M_bm = sum_a C_ab C*_am.
    f.alpha = c[0][0] * std::conj(c[0][0]) + c[1][0] * std::conj(c[1][0]);
    f.beta = c[0][0] * std::conj(c[0][1]) + c[1][0] * std::conj(c[1][1]);
    f.gamma_c = c[0][1] * std::conj(c[0][0]) + c[1][1] * std::conj(c[1][0]);
    f.delta = c[0][1] * std::conj(c[0][1]) + c[1][1] * std::conj(c[1][1]);
    f.phi = state.right().phi();
  }
  const cplx ep = std::exp(kI * f.phi);
  const cplx em = std::exp(-kI * f.phi);
  f.n11 = (f.alpha + f.gamma_c) * ep + (f.beta + f.delta) * em;
  f.n12 = f.beta + f.delta - f.alpha - f.gamma_c;
  f.n21 = (f.delta - f.alpha) - f.beta * em * em + f.gamma_c * ep * ep;
  f.n22 = (f.delta - f.gamma_c) * ep + (f.alpha - f.beta) * em;
  return f;
}

Spectrum2 reduced_spectrum_closed_form(const BipartiteState& state) {
  const auto& c = state.coeffs();
  // Dividing by the (nominally unit) coefficient norm cancels the
  // correlated rounding of the stored coefficients; without it the
  // radicand misses zero by ~1e-16 at maximal entanglement and the
  // square root blows that up to ~1e-8.
  double n2 = 0.0;
  for (const auto& row : c)
    for (const cplx& z : row) n2 += std::norm(z);
  const cplx det = (c[0][0] * c[1][1] - c[0][1] * c[1][0]) * (1.0 / n2);
  const double radicand = (1.0 - 2.0 * std::abs(det)) * (1.0 + 2.0 * std::abs(det));
  if (radicand < -1e-12) {
    throw ConsistencyError("reduced-spectrum radicand below -1e-12: " +
                           std::to_string(radicand));
  }
  const double root = std::sqrt(std::max(radicand, 0.0));
  return {0.5 * (1.0 + root), 0.5 * (1.0 - root)};
}

double entropy_of_spectrum(double omega_plus, double omega_minus) {
  auto term = [](double w) {
    if (w < -1e-12) {
      throw ConsistencyError("reduced-density eigenvalue below -1e-12: " +
                             std::to_string(w));
    }
    w = std::clamp(w, 0.0, 1.0);
    return w > 0.0 ? -w * std::log2(w) : 0.0;
  };
  // A two-outcome distribution carries at most one bit; rounding can
  // overshoot by ~1 ulp at omega = 1/2.
  return std::min(term(omega_plus) + term(omega_minus), 1.0);
}

double entropy(const BipartiteState& state) {
  auto spectral_entropy = [&](Side keep) {
    const EigenDecomposition2 ed = eig2(reduced_density(state, keep));
    return entropy_of_spectrum(ed.eigenvalues[0].real(), ed.eigenvalues[1].real());
  };
  const double e1 = spectral_entropy(Side::Left);
  const double e2 = spectral_entropy(Side::Right);
  if (std::abs(e1 - e2) > 1e-12) {
    throw ConsistencyError("entropy differs between partial-trace routes: " +
                           std::to_string(e1 - e2));
  }
  return e1;
}

BipartiteState evolve(const BipartiteState& state, Side side, double t,
                      bool allow_broken) {
  if (!std::isfinite(t)) throw ContractError("non-finite evolution time");
  const SubsystemKind& kind = side == Side::Left ? state.left() : state.right();
  require_evolvable(kind, allow_broken);
  const auto lambda = kind.spectrum();

  BipartiteState::Coeffs c = state.coeffs();
  for (int n = 0; n < 2; ++n)
    for (int m = 0; m < 2; ++m) {
      const cplx l = side == Side::Left ? lambda[n] : lambda[m];
      c[n][m] *= std::exp(-kI * l * t);
    }
  const bool non_unitary =
      state.non_unitary() ||
      (kind.is_pt() && kind.phase() != PhaseClass::Unbroken && t != 0.0);
  return BipartiteState(c, state.left(), state.right(), non_unitary);
}

CMat time_dependent_density(const BipartiteState& state, Side side, double t,
                            bool allow_broken) {
  return full_density(evolve(state, side, t, allow_broken));
}

}  // namespace ptq
