#include "hnl/lsystem.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "json_detail.hpp"

namespace hnl {

namespace {

constexpr Cplx kI{0.0, 1.0};

// Probe points for the degenerate-characteristic-function check.
const Cplx kDegenerateProbe[] = {
    Cplx{0.0, 1.0}, Cplx{0.0, 2.0}, Cplx{1.0, 2.0}, Cplx{-1.0, 3.0}};

bool vanishes_identically(const ExprPtr& f) {
  for (Cplx z : kDegenerateProbe) {
    try {
      if (std::abs(eval(f, z)) > 1e-12) return false;
    } catch (const PoleError&) {
      return false;
    }
  }
  return true;
}

Hypothesis couple_hypothesis(Hypothesis a, Hypothesis b) {
  return a == b ? Hypothesis::Setup : Hypothesis::SetupPrime;
}

}  // namespace

std::string_view to_string(Hypothesis h) {
  return h == Hypothesis::Setup ? "setup" : "setup1";
}

LSystem make_lsystem(const ExprPtr& s, VonNeumannKappa kappa, Hypothesis h,
                     std::string label) {
  const Cplx s_at_i = eval(s, kI);
  if (std::abs(s_at_i) > 1e-10) {
    std::ostringstream os;
    os << "make_lsystem: prime-triple normalization requires s(i) = 0, got |s(i)| = "
       << std::abs(s_at_i);
    throw NormalizationError(os.str());
  }
  ExprPtr S = char_from_livsic(s, kappa);
  if (h == Hypothesis::SetupPrime) {
    S = hypothesis_flip(std::move(S));
  }
  if (vanishes_identically(S)) {
    throw PoleError(
        "make_lsystem: characteristic function vanishes identically; "
        "the transfer function would be a pole everywhere");
  }
  LSystem sys{kappa, h,
              h == Hypothesis::Setup ? Cplx{1.0, 0.0} : Cplx{-1.0, 0.0},
              nullptr, nullptr, std::move(label)};
  sys.transfer = transfer_from_char(std::move(S));
  sys.impedance = cayley_transform_expr(sys.transfer);
  return sys;
}

std::vector<Cplx> default_validation_grid() {
  // 16 points per half-plane on |Re z| <= 3, 0.25 <= |Im z| <= 4.
  static const double res[] = {-3.0, -1.0, 1.0, 3.0};
  static const double ims[] = {0.25, 1.0, 2.5, 4.0};
  std::vector<Cplx> grid;
  grid.reserve(32);
  for (double re : res)
    for (double im : ims) grid.emplace_back(re, im);
  for (double re : res)
    for (double im : ims) grid.emplace_back(re, -im);
  return grid;
}

LSystemValidation validate(const LSystem& sys, std::span<const Cplx> grid) {
  LSystemValidation v;
  if (std::abs(std::abs(sys.eta) - 1.0) > 1e-12) {
    v.ok = false;
    v.failures.push_back("eta is not unimodular");
  }
  for (Cplx z : grid) {
    Cplx w, imp;
    try {
      w = eval(sys.transfer, z);
      imp = eval(sys.impedance, z);
    } catch (const PoleError&) {
      continue;  // Cayley coherence is vacuous at a pole of W or V
    }
    try {
      const double residual = std::abs(imp - cayley_w_to_v(w));
      v.max_cayley_residual = std::max(v.max_cayley_residual, residual);
    } catch (const PoleError&) {
      continue;
    }
    if (in_lower_half_plane(z)) {
      v.max_lower_transfer_mod = std::max(v.max_lower_transfer_mod, std::abs(w));
    }
  }
  if (v.max_cayley_residual >= 1e-10) {
    v.ok = false;
    std::ostringstream os;
    os << "transfer/impedance Cayley coherence residual " << v.max_cayley_residual;
    v.failures.push_back(os.str());
  }
  if (v.max_lower_transfer_mod >= 1.0) {
    v.ok = false;
    v.transfer_contractive_lower = false;
    std::ostringstream os;
    os << "|W(z)| reached " << v.max_lower_transfer_mod << " in the lower half-plane";
    v.failures.push_back(os.str());
  }

  v.impedance_class = classify(sys.impedance);
  const double k = sys.kappa.value();
  switch (v.impedance_class.kind) {
    case DonoghueClass::M:
      v.class_consistent = k <= kDefaultClassifyTol;
      break;
    case DonoghueClass::MKappa:
      v.class_consistent = sys.hypothesis == Hypothesis::Setup &&
                           std::abs(v.impedance_class.kappa - k) <= 1e-8;
      break;
    case DonoghueClass::MKappaInv:
      v.class_consistent = sys.hypothesis == Hypothesis::SetupPrime &&
                           std::abs(v.impedance_class.kappa - k) <= 1e-8;
      break;
    case DonoghueClass::NotDonoghue:
      v.class_consistent = false;
      break;
  }
  if (!v.class_consistent) {
    v.ok = false;
    v.failures.push_back("impedance class does not match (hypothesis, kappa)");
  }
  return v;
}

LSystemValidation validate(const LSystem& sys) {
  const std::vector<Cplx> grid = default_validation_grid();
  return validate(sys, grid);
}

LSystem couple(const LSystem& lhs, const LSystem& rhs) {
  for (const LSystem* sys : {&lhs, &rhs}) {
    const LSystemValidation v = validate(*sys);
    if (!v.ok) {
      std::ostringstream os;
      os << "couple: system '" << sys->label << "' failed validation:";
      for (const std::string& f : v.failures) os << " " << f << ";";
      throw ClassError(os.str());
    }
  }
  LSystem out{VonNeumannKappa(lhs.kappa.value() * rhs.kappa.value()),
              couple_hypothesis(lhs.hypothesis, rhs.hypothesis),
              lhs.eta * rhs.eta,
              nullptr,
              nullptr,
              lhs.label.empty() || rhs.label.empty()
                  ? std::string{}
                  : lhs.label + "*" + rhs.label};
  out.transfer = expr::product({lhs.transfer, rhs.transfer});
  out.impedance = cayley_transform_expr(out.transfer);
  return out;
}

LSystem power(const LSystem& sys, int n) {
  if (n < 1) {
    throw DomainError("power: n must be >= 1 (no identity L-system exists)");
  }
  if (sys.hypothesis != Hypothesis::Setup) {
    throw DomainError("power: repeated self-coupling requires hypothesis setup");
  }
  if (n == 1) return sys;
  double kappa_n = 1.0;
  for (int k = 0; k < n; ++k) kappa_n *= sys.kappa.value();
  LSystem out{VonNeumannKappa(kappa_n), Hypothesis::Setup, sys.eta,
              nullptr,  nullptr,        sys.label};
  if (!out.label.empty()) {
    out.label += "^" + std::to_string(n);
  }
  out.transfer = expr::power(sys.transfer, n);
  out.impedance = cayley_transform_expr(out.transfer);
  return out;
}

std::vector<AttractorRow> attractor_diagnostics(const LSystem& sys,
                                                std::span<const Cplx> grid_lower,
                                                std::span<const Cplx> grid_upper,
                                                int n_max) {
  for (Cplx z : grid_lower) {
    if (!in_lower_half_plane(z)) {
      throw DomainError("attractor_diagnostics: grid_lower point not in C_-");
    }
  }
  for (Cplx z : grid_upper) {
    if (!in_upper_half_plane(z)) {
      throw DomainError("attractor_diagnostics: grid_upper point not in C_+");
    }
  }

  std::vector<Cplx> w_lower, w_upper;
  w_lower.reserve(grid_lower.size());
  w_upper.reserve(grid_upper.size());
  for (Cplx z : grid_lower) w_lower.push_back(eval(sys.transfer, z));
  for (Cplx z : grid_upper) w_upper.push_back(eval(sys.transfer, z));

  std::vector<Cplx> w_upper_pow(w_upper.size(), Cplx{1.0, 0.0});
  std::vector<AttractorRow> rows;
  rows.reserve(static_cast<std::size_t>(std::max(n_max, 0)));
  double kappa_n = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    kappa_n *= sys.kappa.value();
    AttractorRow row;
    row.n = n;
    row.kappa_pow = kappa_n;
    for (Cplx w : w_lower) {
      row.sup_lower_transfer =
          std::max(row.sup_lower_transfer, std::pow(std::abs(w), n));
    }
    for (std::size_t k = 0; k < w_upper.size(); ++k) {
      w_upper_pow[k] *= w_upper[k];
      const Cplx v_n = cayley_w_to_v(w_upper_pow[k]);
      row.sup_upper_impedance_err =
          std::max(row.sup_upper_impedance_err, std::abs(v_n - kI));
    }
    rows.push_back(row);
  }
  return rows;
}

std::string to_json(const LSystem& sys) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["kappa"] = sys.kappa.value();
  j["hypothesis"] = std::string(to_string(sys.hypothesis));
  j["eta"] = {sys.eta.real(), sys.eta.imag()};
  j["transfer"] = detail::expr_to_json_obj(sys.transfer);
  j["impedance"] = detail::expr_to_json_obj(sys.impedance);
  j["label"] = sys.label;
  return j.dump();
}

LSystem lsystem_from_json(std::string_view text) {
  nlohmann::json j = detail::parse_json(text);
  detail::require_schema(j, "LSystem");
  try {
    const double kappa = j.at("kappa").get<double>();
    const std::string hyp = j.at("hypothesis").get<std::string>();
    Hypothesis h;
    if (hyp == "setup") {
      h = Hypothesis::Setup;
    } else if (hyp == "setup1") {
      h = Hypothesis::SetupPrime;
    } else {
      throw ParseError("LSystem: hypothesis must be \"setup\" or \"setup1\"");
    }
    const auto& etaj = j.at("eta");
    if (!etaj.is_array() || etaj.size() != 2) {
      throw ParseError("LSystem: eta must be [re, im]");
    }
    LSystem sys{VonNeumannKappa(kappa), h,
                Cplx{etaj.at(0).get<double>(), etaj.at(1).get<double>()},
                detail::expr_from_json_obj(j.at("transfer")),
                detail::expr_from_json_obj(j.at("impedance")),
                j.value("label", std::string{})};
    return sys;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("LSystem: ") + e.what());
  }
}

}  // namespace hnl
