#include "hnl/donoghue.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

namespace hnl {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fixed probe grid for the constant-impedance heuristic.
const Cplx kConstProbe[] = {
    Cplx{0.0, 1.0},  Cplx{1.0, 1.0},  Cplx{-1.0, 2.0}, Cplx{0.0, 2.0},
    Cplx{0.5, 0.5},  Cplx{-2.0, 1.5}, Cplx{2.0, 3.0},  Cplx{-0.3, 0.7},
};

}  // namespace

DonoghueClassTag classify_at_i(Cplx v_at_i, double tol) {
  DonoghueClassTag tag;
  tag.tol = tol;
  if (std::abs(v_at_i.real()) > tol * std::abs(v_at_i)) {
    tag.kind = DonoghueClass::NotDonoghue;
    tag.reason = "nonzero real part at i";
    return tag;
  }
  const double m = v_at_i.imag();
  if (m <= 0.0) {
    tag.kind = DonoghueClass::NotDonoghue;
    tag.reason = "not Herglotz at i";
    return tag;
  }
  if (std::abs(m - 1.0) <= tol) {
    tag.kind = DonoghueClass::M;
    tag.kappa = 0.0;
    return tag;
  }
  if (m < 1.0) {
    tag.kind = DonoghueClass::MKappa;
    tag.kappa = (1.0 - m) / (1.0 + m);
    return tag;
  }
  tag.kind = DonoghueClass::MKappaInv;
  tag.kappa = (m - 1.0) / (m + 1.0);
  return tag;
}

DonoghueClassTag classify(const ExprPtr& f, double tol) {
  return classify_at_i(eval(f, Cplx{0.0, 1.0}), tol);
}

ClassificationReport classification_report(const ExprPtr& f, double tol) {
  ClassificationReport report;
  report.value_at_i = eval(f, Cplx{0.0, 1.0});
  report.tag = classify_at_i(report.value_at_i, tol);
  double spread = 0.0;
  for (Cplx z : kConstProbe) {
    spread = std::max(spread, std::abs(eval(f, z) - report.value_at_i));
  }
  report.probe_spread = spread;
  report.identically_constant =
      spread <= tol * (1.0 + std::abs(report.value_at_i));
  return report;
}

std::string to_json(const ClassificationReport& report) {
  nlohmann::ordered_json j;
  switch (report.tag.kind) {
    case DonoghueClass::M:
      j["class"] = "M";
      break;
    case DonoghueClass::MKappa:
      j["class"] = "Mk";
      break;
    case DonoghueClass::MKappaInv:
      j["class"] = "MkInv";
      break;
    case DonoghueClass::NotDonoghue:
      j["class"] = "None";
      break;
  }
  j["kappa"] = report.tag.kappa;
  j["value_at_i"] = {report.value_at_i.real(), report.value_at_i.imag()};
  j["tol"] = report.tag.tol;
  if (report.tag.kind == DonoghueClass::NotDonoghue) {
    j["reason"] = report.tag.reason;
  }
  j["identically_constant"] = report.identically_constant;
  return j.dump();
}

ExprPtr neg_reciprocal(ExprPtr f) { return expr::neg_reciprocal(std::move(f)); }

ExprPtr scale_to_class(const ExprPtr& base, double kappa, PairedClass which,
                       double tol) {
  if (!(kappa >= 0.0 && kappa < 1.0)) {
    throw DomainError("scale_to_class: kappa must lie in [0,1)");
  }
  const DonoghueClassTag tag = classify(base, tol);
  if (tag.kind != DonoghueClass::M) {
    std::string actual;
    switch (tag.kind) {
      case DonoghueClass::MKappa: actual = "M_kappa"; break;
      case DonoghueClass::MKappaInv: actual = "M_kappa^-1"; break;
      case DonoghueClass::NotDonoghue: actual = "not Donoghue (" + tag.reason + ")"; break;
      default: actual = "M"; break;
    }
    throw ClassError("scale_to_class: base must be class M, got " + actual);
  }
  if (kappa == 0.0) {
    return base;
  }
  const double factor = which == PairedClass::MKappa
                            ? (1.0 - kappa) / (1.0 + kappa)
                            : (1.0 + kappa) / (1.0 - kappa);
  return expr::scale(factor, base);
}

ExprPtr alpha_transform(const ExprPtr& f, double alpha) {
  if (!(alpha >= 0.0 && alpha < kPi)) {
    throw DomainError("alpha_transform: alpha must lie in [0, pi)");
  }
  const double s = std::sin(alpha);
  const double c = std::cos(alpha);
  // (cos a + sin a * f) / (sin a - cos a * f); determinant sin^2 + cos^2 = 1.
  return expr::moebius(Cplx{s, 0.0}, Cplx{c, 0.0}, Cplx{-c, 0.0}, Cplx{s, 0.0}, f);
}

double q_alpha(double delta, double alpha) {
  if (!(delta > 0.0)) {
    throw DomainError("q_alpha: delta must be > 0");
  }
  if (!(alpha >= 0.0 && alpha < kPi)) {
    throw DomainError("q_alpha: alpha must lie in [0, pi)");
  }
  const double s = std::sin(alpha);
  const double c = std::cos(alpha);
  return c * s * (1.0 - delta * delta) / (s * s + c * c * delta * delta);
}

}  // namespace hnl
