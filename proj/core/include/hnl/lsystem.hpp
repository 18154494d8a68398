#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hnl/donoghue.hpp"
#include "hnl/expr.hpp"
#include "hnl/livsic.hpp"

namespace hnl {

// Function-level record of a scalar conservative L-system (input-output
// space C, direction operator J = 1): the von Neumann parameter kappa of the
// main operator, the hypothesis satisfied by the reference self-adjoint
// extension, the unimodular transfer normalization eta, the transfer
// function W and the impedance function V.
//
// Invariants (checked by validate()):
//   * V(z) = i (W(z) - 1) / (W(z) + 1) on a probe grid,
//   * |W(z)| < 1 in the lower half-plane,
//   * V classifies consistently with (hypothesis, kappa):
//       Setup      -> M or M_kappa
//       SetupPrime -> M or M_kappa^{-1}.
//
// eta is stored relative to the Setup characteristic function of the
// underlying triple: W = eta / S_setup, so eta = +1 for Setup systems and
// -1 for SetupPrime systems built by make_lsystem.

enum class Hypothesis { Setup, SetupPrime };

struct LSystem {
  VonNeumannKappa kappa;
  Hypothesis hypothesis = Hypothesis::Setup;
  Cplx eta{1.0, 0.0};
  ExprPtr transfer;   // W
  ExprPtr impedance;  // V
  std::string label;
};

// Builds the system from a Livsic function normalized to s(i) = 0:
//   S = (s - kappa)/(kappa s - 1), flipped to -S under SetupPrime,
//   W = 1/S,  V = Cayley(W).
// Throws NormalizationError if |s(i)| > 1e-10 and PoleError if the
// characteristic function vanishes identically (kappa = 0 with s == 0).
LSystem make_lsystem(const ExprPtr& s, VonNeumannKappa kappa, Hypothesis h,
                     std::string label = "");

struct LSystemValidation {
  bool ok = true;
  double max_cayley_residual = 0.0;     // |V - Cayley(W)| over the grid
  double max_lower_transfer_mod = 0.0;  // max |W| over the C_- sublattice
  bool transfer_contractive_lower = true;
  bool class_consistent = true;
  DonoghueClassTag impedance_class;
  std::vector<std::string> failures;
};

// 16 probe points per half-plane on |Re z| <= 3, 0.25 <= |Im z| <= 4.
std::vector<Cplx> default_validation_grid();

LSystemValidation validate(const LSystem& sys, std::span<const Cplx> grid);
LSystemValidation validate(const LSystem& sys);

// Coupling (serial connection): transfer functions multiply, von Neumann
// parameters multiply, and the hypothesis follows the composition table
//   (Setup, Setup)           -> Setup
//   (SetupPrime, SetupPrime) -> Setup
//   mixed                    -> SetupPrime
// with eta = eta1 * eta2.
LSystem couple(const LSystem& lhs, const LSystem& rhs);

// n-fold self-coupling, n >= 1; requires hypothesis Setup.  There is no
// identity L-system, so n = 0 is a domain error.
LSystem power(const LSystem& sys, int n);

struct AttractorRow {
  int n = 0;
  double sup_lower_transfer = 0.0;  // sup over C_- grid of |W(z)|^n
  double sup_upper_impedance_err = 0.0;  // sup over C_+ grid of |V_n(z) - i|
  double kappa_pow = 0.0;  // kappa^n
};

// Repeated self-coupling diagnostics: the transfer powers must decay to 0 on
// the lower grid and the impedances of the powers must approach the constant
// i on the upper grid.
std::vector<AttractorRow> attractor_diagnostics(const LSystem& sys,
                                                std::span<const Cplx> grid_lower,
                                                std::span<const Cplx> grid_upper,
                                                int n_max);

// JSON round-trip.  {"schema":1,"kappa":..,"hypothesis":"setup|setup1",
//  "eta":[re,im],"transfer":<FuncExpr>,"impedance":<FuncExpr>,"label":".."}
std::string to_json(const LSystem& sys);
LSystem lsystem_from_json(std::string_view text);

std::string_view to_string(Hypothesis h);

}  // namespace hnl
