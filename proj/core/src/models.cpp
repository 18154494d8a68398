#include "hnl/models.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json_detail.hpp"

namespace hnl {

namespace {

constexpr Cplx kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;

void require_kappa_range(double kappa, const char* who) {
  if (!(kappa >= 0.0 && kappa < 1.0)) {
    throw DomainError(std::string(who) + ": kappa must lie in [0,1)");
  }
}

// s(z) = (e^L - e^{-iLz}) / (1 - e^L e^{-iLz}) as a Moebius of the transport
// factor u = e^{-iLz}.
ExprPtr transport_livsic(double length) {
  const double eL = std::exp(length);
  return expr::moebius(Cplx{-1.0, 0.0}, Cplx{eL, 0.0}, Cplx{-eL, 0.0},
                       Cplx{1.0, 0.0}, expr::exp_transport(length, +1));
}

// e^{+iLz} = 1 / e^{-iLz}
ExprPtr exp_conjugate_transport(double length) {
  return expr::moebius(Cplx{0.0, 0.0}, Cplx{1.0, 0.0}, Cplx{1.0, 0.0},
                       Cplx{0.0, 0.0}, expr::exp_transport(length, +1));
}

}  // namespace

LSystem transport_system(const TransportParams& params, Hypothesis h) {
  if (!(params.ell > 0.0) || !std::isfinite(params.ell)) {
    throw DomainError("transport_system: ell must be positive");
  }
  if (params.gamma && !(*params.gamma > 0.0 && *params.gamma < params.ell)) {
    throw DomainError("transport_system: gamma must lie in (0, ell)");
  }
  const double ell = params.ell;
  const int sign = h == Hypothesis::Setup ? +1 : -1;
  LSystem sys{VonNeumannKappa(std::exp(-ell)), h,
              h == Hypothesis::Setup ? Cplx{1.0, 0.0} : Cplx{-1.0, 0.0},
              expr::exp_transport(ell, sign), nullptr, ""};
  sys.impedance = cayley_transform_expr(sys.transfer);
  std::ostringstream label;
  label << "transport(ell=" << ell << "," << to_string(h) << ")";
  sys.label = label.str();
  return sys;
}

LSystem transport_system(double ell, Hypothesis h) {
  return transport_system(TransportParams{ell, std::nullopt}, h);
}

ExprPtr transport_livsic_expr(double ell) {
  if (!(ell > 0.0) || !std::isfinite(ell)) {
    throw DomainError("transport_livsic_expr: ell must be positive");
  }
  return transport_livsic(ell);
}

CouplingGeometry coupling_geometry(double kappa1, double kappa2) {
  require_kappa_range(kappa1, "coupling_geometry");
  require_kappa_range(kappa2, "coupling_geometry");
  CouplingGeometry g;
  if (kappa2 != 0.0) {
    g.tan_alpha = (1.0 / kappa2) *
                  std::sqrt((1.0 - kappa2 * kappa2) / (1.0 - kappa1 * kappa1));
    g.alpha = std::atan(g.tan_alpha);
    const double sin_beta = kappa1 * std::sin(g.alpha);
    const double cos_beta = std::cos(g.alpha) / kappa2;
    g.beta = std::atan2(sin_beta, cos_beta);
    g.g_minus_coeffs = {cos_beta, -sin_beta};
  } else {
    // Degenerate branch: alpha = pi/2, G+ = -g+^2.
    g.tan_alpha = std::numeric_limits<double>::infinity();
    g.alpha = kPi / 2.0;
    const double sin_beta = kappa1;
    const double cos_beta = std::sqrt(1.0 - kappa1 * kappa1);
    g.beta = std::atan2(sin_beta, cos_beta);
    g.g_minus_coeffs = {cos_beta, -sin_beta};
  }
  g.g_plus_coeffs = {std::cos(g.alpha), -std::sin(g.alpha)};
  return g;
}

StarExtensionMatrices star_extension_matrices(double kappa, int U) {
  require_kappa_range(kappa, "star_extension_matrices");
  if (U != 1 && U != -1) {
    throw DomainError("star_extension_matrices: U must be +1 or -1");
  }
  const double u = static_cast<double>(U);
  // H = -i (1-k^2)^{-1} [ (1-kU)(1-Uk)^{-1} - kU ] U  for scalar K = kappa.
  const Cplx H = -kI / (1.0 - kappa * kappa) *
                 ((1.0 - kappa * u) / (1.0 - u * kappa) - kappa * u) * u;

  StarExtensionMatrices m;
  m.H = H;
  m.U = U;
  m.kappa = kappa;
  // S_A = [[Hk, H], [k(Hk+i), i+kH]]
  m.S_A << H * kappa, H, kappa * (H * kappa + kI), kI + kappa * H;
  // S_A* = [[k H* - i, (k H* - i) k], [H*, H* k]]
  const Cplx Hc = std::conj(H);
  m.S_Astar << kappa * Hc - kI, (kappa * Hc - kI) * kappa, Hc, Hc * kappa;

  const Cplx expected = U == 1 ? -kI / (1.0 + kappa) : kI / (1.0 - kappa);
  if (std::abs(H - expected) > 1e-14) {
    throw Error("star_extension_matrices: H disagrees with its closed form");
  }
  return m;
}

ImPartDecomposition im_part_decomposition(const StarExtensionMatrices& m) {
  const Eigen::Matrix2cd im_part = (m.S_A - m.S_Astar) / Cplx{0.0, 2.0};

  ImPartDecomposition d;
  if (m.U == 1) {
    d.weight = (1.0 - m.kappa) / (2.0 + 2.0 * m.kappa);
    d.pattern << 1.0, -1.0, -1.0, 1.0;
  } else {
    d.weight = (1.0 + m.kappa) / (2.0 - 2.0 * m.kappa);
    d.pattern << 1.0, 1.0, 1.0, 1.0;
  }
  d.channel_coefficient = std::sqrt(d.weight);

  const Eigen::Matrix2cd expected = d.weight * d.pattern.cast<Cplx>();
  const double mismatch = (im_part - expected).cwiseAbs().maxCoeff();
  if (mismatch > 1e-12) {
    std::ostringstream os;
    os << "im_part_decomposition: rank-one pattern mismatch " << mismatch;
    throw Error(os.str());
  }
  return d;
}

ExprPtr example3_livsic(double ell, double gamma) {
  if (!(ell > 0.0) || !(gamma > 0.0 && gamma < ell)) {
    throw DomainError("example3_livsic: need 0 < gamma < ell");
  }
  // s(z) = e^{izl} (e^{-izg} - e^g) / (e^g - e^{izg})
  //      = e^{izl} * u * (u - e^g) / (e^g u - 1),   u = e^{-izg}.
  const double eg = std::exp(gamma);
  const ExprPtr u = expr::exp_transport(gamma, +1);
  return expr::product(
      {exp_conjugate_transport(ell), u,
       expr::moebius(Cplx{1.0, 0.0}, Cplx{-eg, 0.0}, Cplx{eg, 0.0},
                     Cplx{-1.0, 0.0}, u)});
}

ExprPtr example3_livsic_factored(double ell, double gamma) {
  if (!(ell > 0.0) || !(gamma > 0.0 && gamma < ell)) {
    throw DomainError("example3_livsic_factored: need 0 < gamma < ell");
  }
  // s = s1 * S2 with s1 the transport Livsic function on [0,gamma] and
  // S2 = e^{i(ell-gamma)z} the characteristic function of the tail piece.
  return expr::product(
      {transport_livsic(gamma), exp_conjugate_transport(ell - gamma)});
}

DiscreteModelTriple model_triple(SpectralMeasure mu, double kappa) {
  require_kappa_range(kappa, "model_triple");
  if (!mu.purely_atomic()) {
    throw DomainError("model_triple: measure must be purely atomic");
  }
  const double mass = normalized_mass(mu);
  if (std::abs(mass - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "model_triple: normalized mass must be 1, got " << mass;
    throw DomainError(os.str());
  }
  DiscreteModelTriple t{std::move(mu), kappa, 0};
  t.dimension = static_cast<int>(t.measure.atoms().size());
  return t;
}

Eigen::MatrixXcd resolvent_B(const DiscreteModelTriple& t, Cplx z) {
  require_finite(z, "resolvent_B");
  const auto& atoms = t.measure.atoms();
  const int n = t.dimension;
  for (const Atom& a : atoms) {
    if (z == Cplx{a.location, 0.0}) {
      std::ostringstream os;
      os << "resolvent_B: z = " << a.location << " is an eigenvalue of B";
      throw PoleError(os.str());
    }
  }
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    r(j, j) = 1.0 / (atoms[static_cast<std::size_t>(j)].location - z);
  }
  return r;
}

Eigen::MatrixXcd resolvent_T(const DiscreteModelTriple& t, Cplx z) {
  if (z.imag() == 0.0) {
    throw DomainError("resolvent_T: z must lie off the real axis");
  }
  Eigen::MatrixXcd r = resolvent_B(t, z);
  const Cplx m = weyl_eval(t.measure, z);
  // p(z) = ( M(z) + i (kappa+1)/(kappa-1) )^{-1}; kappa = 0 gives (M - i)^{-1}.
  const Cplx denom = m + kI * (t.kappa + 1.0) / (t.kappa - 1.0);
  if (std::abs(denom) < 1e-12 * (1.0 + std::abs(m))) {
    std::ostringstream os;
    os << "resolvent_T: p(z) pole at z = (" << z.real() << ", " << z.imag()
       << "); z is an eigenvalue of T_B or outside rho(T_B) ∩ rho(B)";
    throw SpectralPointError(os.str());
  }
  const Cplx p = 1.0 / denom;

  const auto& atoms = t.measure.atoms();
  const int n = t.dimension;
  // Rank-one term: f_j -> p(z) * sum_k w_k f_k/(lambda_k - z) * 1/(lambda_j - z),
  // i.e. the mu-weighted pairing with g_conj(z) times g_z.
  for (int j = 0; j < n; ++j) {
    const Cplx gj = 1.0 / (atoms[static_cast<std::size_t>(j)].location - z);
    for (int k = 0; k < n; ++k) {
      const Cplx gk = 1.0 / (atoms[static_cast<std::size_t>(k)].location - z);
      r(j, k) -= p * gj * atoms[static_cast<std::size_t>(k)].weight * gk;
    }
  }
  return r;
}

LSystem attractor_model() {
  // Closed-form invariants of the limit of repeated self-coupling:
  // s == 0, M == i, kappa = 0; W == 0 on C_-, V == i on C_+.
  LSystem sys{VonNeumannKappa(0.0), Hypothesis::Setup, Cplx{1.0, 0.0},
              expr::scale(0.0, expr::const_imag(1.0)), expr::const_imag(1.0),
              "attractor"};
  return sys;
}

std::string to_json(const DiscreteModelTriple& t) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["atoms"] = nlohmann::json::array();
  for (const Atom& a : t.measure.atoms()) {
    j["atoms"].push_back({a.location, a.weight});
  }
  j["kappa"] = t.kappa;
  return j.dump();
}

DiscreteModelTriple model_triple_from_json(std::string_view text) {
  nlohmann::json j = detail::parse_json(text);
  detail::require_schema(j, "DiscreteModelTriple");
  try {
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) {
      atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    }
    return model_triple(SpectralMeasure::atomic(std::move(atoms)),
                        j.at("kappa").get<double>());
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("DiscreteModelTriple: ") + e.what());
  }
}

std::string matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      j["data"].push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return j.dump();
}

}  // namespace hnl
