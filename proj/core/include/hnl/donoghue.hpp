#pragma once

#include <string>

#include "hnl/expr.hpp"

namespace hnl {

// Classification of Herglotz-Nevanlinna functions into the Donoghue class M
// and the generalized classes M_kappa / M_kappa^{-1}, read off the value at
// z = i:
//
//   M(i) = i                       -> M          (mass preserving)
//   M(i) = i (1-kappa)/(1+kappa)   -> M_kappa    (mass decreasing)
//   M(i) = i (1+kappa)/(1-kappa)   -> M_kappa^-1 (mass increasing)
//
// kappa = 0 collapses all three into M.

enum class DonoghueClass { M, MKappa, MKappaInv, NotDonoghue };

struct DonoghueClassTag {
  DonoghueClass kind = DonoghueClass::NotDonoghue;
  double kappa = 0.0;       // in (0,1) for the kappa-tagged kinds
  std::string reason;       // set for NotDonoghue
  double tol = 0.0;         // tolerance used during classification
};

inline constexpr double kDefaultClassifyTol = 1e-9;

// Total over finite inputs.  Boundary ties resolve as documented: a real
// part above tol*|v| or m <= 0 is NotDonoghue; |m - 1| <= tol is M.
DonoghueClassTag classify_at_i(Cplx v_at_i, double tol);

// classify_at_i(eval(f, i), tol); evaluation errors propagate.
DonoghueClassTag classify(const ExprPtr& f, double tol = kDefaultClassifyTol);

struct ClassificationReport {
  DonoghueClassTag tag;
  Cplx value_at_i;
  // Heuristic: value spread over a fixed probe grid fell below tolerance.
  // The paper handles identically-constant impedances separately but gives
  // no numeric criterion; this flag is advisory only.
  bool identically_constant = false;
  double probe_spread = 0.0;
};

ClassificationReport classification_report(const ExprPtr& f,
                                           double tol = kDefaultClassifyTol);

// {"class":"M|Mk|MkInv|None","kappa":...,"value_at_i":[re,im],"tol":...}
std::string to_json(const ClassificationReport& report);

// NegReciprocal(f): swaps M_kappa <-> M_kappa^{-1} and fixes M.
ExprPtr neg_reciprocal(ExprPtr f);

enum class PairedClass { MKappa, MKappaInv };

// Scales a class-M base by (1-kappa)/(1+kappa) or (1+kappa)/(1-kappa) so the
// result lands in the requested class.  Requires classify(base) == M.
ExprPtr scale_to_class(const ExprPtr& base, double kappa, PairedClass which,
                       double tol = kDefaultClassifyTol);

// One-parameter impedance family
//   V_alpha = (cos a + sin a * V) / (sin a - cos a * V),  a in [0, pi).
// Stored structurally as a Moebius node; a = pi/2 is the identity and a = 0
// is -1/V pointwise.
ExprPtr alpha_transform(const ExprPtr& f, double alpha);

// Constant term of the alpha-family at z = i when f(i) = i*delta:
//   q = cos a sin a (1 - delta^2) / (sin^2 a + cos^2 a delta^2).
double q_alpha(double delta, double alpha);

}  // namespace hnl
