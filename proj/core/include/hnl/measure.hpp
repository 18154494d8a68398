#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hnl/complex.hpp"

namespace hnl {

// Discrete/quadrature representation of a Borel measure mu on the real line,
// used as the representing measure of a Herglotz-Nevanlinna function
//
//   M(z) = ∫ ( 1/(lambda - z) - lambda/(1 + lambda^2) ) dmu(lambda).
//
// The measure is a finite sum of point atoms (location, weight) plus optional
// absolutely continuous panels.  A panel [a,b] carries a fixed Gauss-Legendre
// rule of `nodes` points together with the density values rho(t_i) at those
// nodes; the nodes and quadrature weights are computed once at construction
// and are immutable afterwards, so evaluation is pure and re-entrant.
//
// Class membership is tracked through the normalized mass
//
//   ∫ dmu / (1 + lambda^2),
//
// which equals Im M(i).  Desk-scale representations are necessarily finite
// measures; validate() reports this as a note, not an error.

struct Atom {
  double location = 0.0;
  double weight = 0.0;  // strictly positive
};

struct DensityPanel {
  double a = 0.0;
  double b = 0.0;
  int nodes = 0;
  std::vector<double> density;  // rho at the Gauss-Legendre nodes, >= 0
};

class SpectralMeasure {
 public:
  // Validates invariants: positive weights, pairwise distinct atom
  // locations, nonnegative densities, finite positive normalized mass.
  // Throws std::invalid_argument on violation.
  SpectralMeasure(std::vector<Atom> atoms, std::vector<DensityPanel> panels);

  static SpectralMeasure atomic(std::vector<Atom> atoms) {
    return SpectralMeasure(std::move(atoms), {});
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPanel>& panels() const { return panels_; }
  bool purely_atomic() const { return panels_.empty(); }

  // Gauss-Legendre abscissae/weights of panel `k`, in [a,b] order.
  const std::vector<double>& panel_points(std::size_t k) const { return nodes_x_[k]; }
  const std::vector<double>& panel_weights(std::size_t k) const { return nodes_w_[k]; }

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityPanel> panels_;
  std::vector<std::vector<double>> nodes_x_;
  std::vector<std::vector<double>> nodes_w_;
};

// Sigma-approximation of the Herglotz integral above: exact sum over atoms
// plus the per-panel quadrature.  z must lie off the real axis.
Cplx weyl_eval(const SpectralMeasure& mu, Cplx z);

// ∫ dmu / (1 + lambda^2), computed with the same atom + quadrature rule
// as weyl_eval, so that weyl_eval(mu, i) == i * normalized_mass(mu) holds
// exactly for purely atomic measures.
double normalized_mass(const SpectralMeasure& mu);

struct MeasureValidation {
  bool ok = true;
  double normalized_mass = 0.0;
  double total_mass = 0.0;
  bool finite_mass_note = false;  // finite representation of an "infinite" measure
  std::vector<std::string> notes;
};

MeasureValidation validate(const SpectralMeasure& mu);

// JSON round-trip.  Schema (versioned, "schema": 1):
//   {"schema":1,"atoms":[[lambda,w],...],
//    "panels":[{"a":..,"b":..,"nodes":N,"density":[..]},...]}
std::string to_json(const SpectralMeasure& mu);
SpectralMeasure measure_from_json(std::string_view text);

}  // namespace hnl
