#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "hnl/lsystem.hpp"

namespace hnl {

// Closed-form model systems and the discrete functional model.

// Parameters of the transport family on an interval of length ell, with an
// optional split point gamma in (0, ell) for coupling constructions.
struct TransportParams {
  double ell = 1.0;
  std::optional<double> gamma;
};

// The interval transport model: kappa = e^{-ell},
//   s(z) = (e^ell - e^{-i ell z}) / (1 - e^ell e^{-i ell z}),
//   S(z) = +-e^{i ell z},  W(z) = +-e^{-i ell z},  V = Cayley(W),
// sign chosen by the hypothesis.
LSystem transport_system(const TransportParams& params, Hypothesis h);
LSystem transport_system(double ell, Hypothesis h);

// The interval Livsic function s above as an expression; s(i) = 0 and
// |s| < 1 on the upper half-plane.
ExprPtr transport_livsic_expr(double ell);

// Deficiency-basis geometry of an operator coupling with parameters
// (kappa1, kappa2):
//   tan(alpha) = (1/kappa2) sqrt((1-kappa2^2)/(1-kappa1^2))   (kappa2 != 0)
//   sin(beta)  = kappa1 sin(alpha), cos(beta) = cos(alpha)/kappa2
// and the degenerate branch sin(beta) = kappa1, cos(beta) = sqrt(1-kappa1^2),
// alpha = pi/2 when kappa2 = 0.  The coefficient pairs describe
//   G+ = cos(alpha) g+^1 - sin(alpha) g+^2,
//   G- = cos(beta)  g-^1 - sin(beta)  g-^2
// relative to unit deficiency vectors.
struct CouplingGeometry {
  double tan_alpha = 0.0;  // +inf in the degenerate branch
  double alpha = 0.0;
  double beta = 0.0;
  std::array<double, 2> g_plus_coeffs{};   // {cos(alpha), -sin(alpha)}
  std::array<double, 2> g_minus_coeffs{};  // {cos(beta),  -sin(beta)}
};

CouplingGeometry coupling_geometry(double kappa1, double kappa2);

// Scalar (*)-extension data for deficiency indices (1,1): the parameter H
// and the 2x2 block matrices S_A, S_A* for U = +1 (Setup) or U = -1
// (SetupPrime).  H = -i/(1+kappa) for U = +1 and H = i/(1-kappa) for U = -1.
struct StarExtensionMatrices {
  Cplx H;
  Eigen::Matrix2cd S_A;
  Eigen::Matrix2cd S_Astar;
  int U = 1;
  double kappa = 0.0;
};

StarExtensionMatrices star_extension_matrices(double kappa, int U);

// (S_A - S_A*)/(2i) is rank one:
//   U = +1: weight (1-kappa)/(2+2kappa) times [[1,-1],[-1,1]]
//   U = -1: weight (1+kappa)/(2-2kappa) times [[1, 1],[ 1,1]]
// channel_coefficient = sqrt(weight) multiplies (phi -+ psi) in the channel
// vector (1/sqrt(2) at kappa = 0).  Throws on pattern mismatch beyond 1e-12.
struct ImPartDecomposition {
  double weight = 0.0;
  Eigen::Matrix2d pattern;
  double channel_coefficient = 0.0;
};

ImPartDecomposition im_part_decomposition(const StarExtensionMatrices& m);

// Livsic function of the split-interval coupling with kappa1 = 0:
//   s(z) = e^{i z ell} (e^{-i z gamma} - e^gamma) / (e^gamma - e^{i z gamma}),
// together with the factored route s1 * S2 (S2 = e^{i (ell-gamma) z}) as an
// independent oracle expression.
ExprPtr example3_livsic(double ell, double gamma);
ExprPtr example3_livsic_factored(double ell, double gamma);

// Finite functional model (B-dot, T_B, B) on a purely atomic measure with
// unit normalized mass.  B is multiplication by lambda_j under the weighted
// inner product (f,g) = sum_j f_j conj(g_j) w_j.
struct DiscreteModelTriple {
  SpectralMeasure measure;
  double kappa = 0.0;
  int dimension = 0;
};

// Requires mu purely atomic with |normalized_mass - 1| <= 1e-10.
DiscreteModelTriple model_triple(SpectralMeasure mu, double kappa);

// (B - z)^{-1}: the diagonal map f_j -> f_j / (lambda_j - z).
Eigen::MatrixXcd resolvent_B(const DiscreteModelTriple& t, Cplx z);

// Krein-type formula for the dissipative extension:
//   (T_B - z)^{-1} = (B - z)^{-1} - p(z) (., g_conj(z)) g_z,
//   p(z) = ( M(z) + i (kappa+1)/(kappa-1) )^{-1},
// with g_z components 1/(lambda_j - z) and the mu-weighted pairing.  For
// kappa = 0 this reduces to p = (M - i)^{-1}.  Throws SpectralPointError at
// a pole of p (z is an eigenvalue of T_B or outside rho(T_B) ∩ rho(B)).
Eigen::MatrixXcd resolvent_T(const DiscreteModelTriple& t, Cplx z);

// The system attractor as a named constant system: kappa = 0, W == 0 on the
// lower half-plane, V == i on the upper half-plane.  The transfer and
// impedance expressions are each valid on their stated half-plane only.
LSystem attractor_model();

// {"schema":1,"atoms":[[lambda,w],...],"kappa":..}
std::string to_json(const DiscreteModelTriple& t);
DiscreteModelTriple model_triple_from_json(std::string_view text);

// Dense row-major complex matrix dump for external diffing:
// {"schema":1,"rows":n,"cols":n,"data":[[re,im],...]}
std::string matrix_to_json(const Eigen::MatrixXcd& m);

}  // namespace hnl
