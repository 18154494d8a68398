#include "hnl/livsic.hpp"

#include <cmath>
#include <stdexcept>

namespace hnl {

VonNeumannKappa::VonNeumannKappa(double value) : value_(value) {
  if (!(value >= 0.0 && value < 1.0)) {
    throw std::invalid_argument("VonNeumannKappa: value must lie in [0,1)");
  }
}

ExprPtr s_from_m(ExprPtr m) {
  // s = (M - i) / (M + i)
  return expr::moebius(Cplx{1.0, 0.0}, Cplx{0.0, -1.0}, Cplx{1.0, 0.0},
                       Cplx{0.0, 1.0}, std::move(m));
}

ExprPtr m_from_s(ExprPtr s) {
  // M = (s + 1) / (i s - i)
  return expr::moebius(Cplx{1.0, 0.0}, Cplx{1.0, 0.0}, Cplx{0.0, 1.0},
                       Cplx{0.0, -1.0}, std::move(s));
}

ExprPtr char_from_livsic(ExprPtr s, VonNeumannKappa kappa) {
  // S = (s - kappa) / (kappa s - 1); self-inverse for real kappa.
  const double k = kappa.value();
  return expr::moebius(Cplx{1.0, 0.0}, Cplx{-k, 0.0}, Cplx{k, 0.0},
                       Cplx{-1.0, 0.0}, std::move(s));
}

ExprPtr livsic_from_char(ExprPtr S, VonNeumannKappa kappa) {
  return char_from_livsic(std::move(S), kappa);
}

ExprPtr hypothesis_flip(ExprPtr S) { return expr::scale(-1.0, std::move(S)); }

ExprPtr transfer_from_char(ExprPtr S, Cplx eta) {
  if (std::abs(std::abs(eta) - 1.0) > 1e-12) {
    throw DomainError("transfer_from_char: eta must be unimodular");
  }
  // W = eta / S
  return expr::moebius(Cplx{0.0, 0.0}, eta, Cplx{1.0, 0.0}, Cplx{0.0, 0.0},
                       std::move(S));
}

}  // namespace hnl
