#pragma once

#include "hnl/expr.hpp"

namespace hnl {

// von Neumann extension parameter, real with 0 <= kappa < 1.  (A complex
// parameter can always be rotated away by a change of deficiency basis.)
class VonNeumannKappa {
 public:
  explicit VonNeumannKappa(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// The Livsic / Weyl-Titchmarsh / characteristic function calculus.
// All maps are Moebius nodes; poles surface at evaluation only.

// s = (M - i) / (M + i)
ExprPtr s_from_m(ExprPtr m);

// M = (1/i) (s + 1) / (s - 1); exact inverse of s_from_m.
ExprPtr m_from_s(ExprPtr s);

// S = (s - kappa) / (kappa s - 1).  Self-inverse for real kappa.
ExprPtr char_from_livsic(ExprPtr s, VonNeumannKappa kappa);
ExprPtr livsic_from_char(ExprPtr S, VonNeumannKappa kappa);

// S -> -S: converts between the reference self-adjoint extensions of the
// two hypothesis setups.
ExprPtr hypothesis_flip(ExprPtr S);

// W = eta / S with |eta| = 1 (within 1e-12).
ExprPtr transfer_from_char(ExprPtr S, Cplx eta = Cplx{1.0, 0.0});

}  // namespace hnl
