#include "hnl/expr.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json_detail.hpp"

namespace hnl {

namespace {

constexpr double kPoleTol = 1e-13;  // scale-aware denominator cutoff
constexpr int kMaxJsonDepth = 256;

// |den| < kPoleTol * (1 + |num|) is treated as a pole.
bool is_pole(Cplx num, Cplx den) {
  return std::abs(den) < kPoleTol * (1.0 + std::abs(num));
}

std::string indexed(const char* name, std::size_t i) {
  std::ostringstream os;
  os << name << "[" << i << "]";
  return os.str();
}

}  // namespace

namespace expr {

ExprPtr weyl(SpectralMeasure mu) {
  return std::make_shared<FuncExpr>(WeylTransformNode{std::move(mu)});
}

ExprPtr const_imag(double c) {
  require_finite(c, "const_imag");
  return std::make_shared<FuncExpr>(ConstImagNode{c});
}

ExprPtr exp_transport(double ell, int sign) {
  require_finite(ell, "exp_transport");
  if (ell <= 0.0) {
    throw std::invalid_argument("exp_transport: ell must be > 0");
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("exp_transport: sign must be +1 or -1");
  }
  return std::make_shared<FuncExpr>(ExpTransportNode{ell, sign});
}

ExprPtr moebius(Cplx a, Cplx b, Cplx c, Cplx d, ExprPtr inner) {
  require_finite(a, "moebius");
  require_finite(b, "moebius");
  require_finite(c, "moebius");
  require_finite(d, "moebius");
  if (!inner) {
    throw std::invalid_argument("moebius: null inner expression");
  }
  const Cplx det = a * d - b * c;
  const double scale =
      std::abs(a) * std::abs(d) + std::abs(b) * std::abs(c) + 1.0;
  if (std::abs(det) <= 1e-15 * scale) {
    throw std::invalid_argument("moebius: determinant ad - bc must be nonzero");
  }
  return std::make_shared<FuncExpr>(MoebiusNode{a, b, c, d, std::move(inner)});
}

ExprPtr product(std::vector<ExprPtr> factors) {
  if (factors.empty()) {
    throw std::invalid_argument("product: needs at least one factor");
  }
  for (const ExprPtr& f : factors) {
    if (!f) throw std::invalid_argument("product: null factor");
  }
  return std::make_shared<FuncExpr>(ProductNode{std::move(factors)});
}

ExprPtr scale(double factor, ExprPtr inner) {
  require_finite(factor, "scale");
  if (!inner) throw std::invalid_argument("scale: null inner expression");
  return std::make_shared<FuncExpr>(ScaleNode{factor, std::move(inner)});
}

ExprPtr neg_reciprocal(ExprPtr inner) {
  if (!inner) throw std::invalid_argument("neg_reciprocal: null inner expression");
  return std::make_shared<FuncExpr>(NegReciprocalNode{std::move(inner)});
}

ExprPtr power(ExprPtr inner, int n) {
  if (!inner) throw std::invalid_argument("power: null inner expression");
  if (n < 1) throw std::invalid_argument("power: exponent must be >= 1");
  return std::make_shared<FuncExpr>(PowerNode{std::move(inner), n});
}

}  // namespace expr

namespace {

struct Evaluator {
  Cplx z;

  Cplx operator()(const WeylTransformNode& n) const {
    return weyl_eval(n.measure, z);
  }

  Cplx operator()(const ConstImagNode& n) const { return Cplx{0.0, n.c}; }

  Cplx operator()(const ExpTransportNode& n) const {
    // sign * exp(-i*ell*z)
    return static_cast<double>(n.sign) * std::exp(Cplx{0.0, -n.ell} * z);
  }

  Cplx operator()(const MoebiusNode& n) const {
    Cplx v;
    try {
      v = std::visit(*this, n.inner->node());
    } catch (PoleError& e) {
      // Moebius extends to the Riemann sphere: f -> inf gives a/c.
      if (std::abs(n.c) == 0.0) {
        e.prepend_path("moebius");
        throw;
      }
      return n.a / n.c;
    } catch (Error& e) {
      e.prepend_path("moebius");
      throw;
    }
    const Cplx num = n.a * v + n.b;
    const Cplx den = n.c * v + n.d;
    if (is_pole(num, den)) {
      throw PoleError("moebius: denominator vanished");
    }
    return num / den;
  }

  Cplx operator()(const ProductNode& n) const {
    Cplx result{1.0, 0.0};
    bool saw_pole = false;
    bool saw_zero = false;
    for (std::size_t i = 0; i < n.factors.size(); ++i) {
      try {
        const Cplx v = std::visit(*this, n.factors[i]->node());
        if (std::abs(v) == 0.0) saw_zero = true;
        result *= v;
      } catch (PoleError&) {
        saw_pole = true;
      } catch (Error& e) {
        e.prepend_path(indexed("product", i));
        throw;
      }
    }
    if (saw_pole && saw_zero) {
      throw IndeterminateError("product: 0 * inf is indeterminate");
    }
    if (saw_pole) {
      throw PoleError("product: infinite factor");
    }
    return result;
  }

  Cplx operator()(const ScaleNode& n) const {
    try {
      return n.factor * std::visit(*this, n.inner->node());
    } catch (PoleError& e) {
      if (n.factor == 0.0) {
        throw IndeterminateError("scale: 0 * inf is indeterminate");
      }
      e.prepend_path("scale");
      throw;
    } catch (Error& e) {
      e.prepend_path("scale");
      throw;
    }
  }

  Cplx operator()(const NegReciprocalNode& n) const {
    Cplx v;
    try {
      v = std::visit(*this, n.inner->node());
    } catch (PoleError&) {
      return Cplx{0.0, 0.0};  // -1/inf
    } catch (Error& e) {
      e.prepend_path("neg_reciprocal");
      throw;
    }
    if (is_pole(Cplx{-1.0, 0.0}, v)) {
      throw PoleError("neg_reciprocal: inner value vanished");
    }
    return -1.0 / v;
  }

  Cplx operator()(const PowerNode& n) const {
    Cplx v;
    try {
      v = std::visit(*this, n.inner->node());
    } catch (Error& e) {
      e.prepend_path("power");
      throw;  // inf^n = inf for n >= 1, so PoleError propagates unchanged
    }
    Cplx result{1.0, 0.0};
    for (int k = 0; k < n.n; ++k) result *= v;
    return result;
  }
};

}  // namespace

Cplx eval(const ExprPtr& f, Cplx z) {
  if (!f) throw std::invalid_argument("eval: null expression");
  require_finite(z, "eval");
  return std::visit(Evaluator{z}, f->node());
}

Cplx cayley_w_to_v(Cplx w) {
  const Cplx num = Cplx{0.0, 1.0} * (w - 1.0);
  const Cplx den = w + 1.0;
  if (is_pole(num, den)) {
    throw PoleError("cayley_w_to_v: pole at w = -1");
  }
  return num / den;
}

Cplx cayley_v_to_w(Cplx v) {
  const Cplx num = 1.0 - Cplx{0.0, 1.0} * v;
  const Cplx den = 1.0 + Cplx{0.0, 1.0} * v;
  if (is_pole(num, den)) {
    throw PoleError("cayley_v_to_w: pole at v = i");
  }
  return num / den;
}

ExprPtr cayley_transform_expr(ExprPtr transfer) {
  // V = (i*W - i) / (W + 1)
  return expr::moebius(Cplx{0.0, 1.0}, Cplx{0.0, -1.0}, Cplx{1.0, 0.0},
                       Cplx{1.0, 0.0}, std::move(transfer));
}

HerglotzProbeReport herglotz_probe(const ExprPtr& f, std::span<const Cplx> grid) {
  if (grid.empty()) {
    throw DomainError("herglotz_probe: empty grid");
  }
  HerglotzProbeReport report;
  bool first = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Cplx z = grid[i];
    if (!in_upper_half_plane(z)) {
      std::ostringstream os;
      os << "herglotz_probe: grid[" << i << "] is not in the upper half-plane";
      throw DomainError(os.str());
    }
    Cplx v;
    try {
      v = eval(f, z);
    } catch (Error& e) {
      e.prepend_path(indexed("grid", i));
      throw;
    }
    if (first || v.imag() < report.min_im) {
      report.min_im = v.imag();
      report.argmin = z;
      report.argmin_index = i;
      first = false;
    }
  }
  return report;
}

// ---- JSON ------------------------------------------------------------------

namespace detail {

namespace {

nlohmann::ordered_json cplx_to_json(Cplx z) {
  return nlohmann::ordered_json::array({z.real(), z.imag()});
}

Cplx cplx_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError("FuncExpr: complex values are [re, im] pairs");
  }
  return Cplx{j.at(0).get<double>(), j.at(1).get<double>()};
}

struct JsonWriter {
  nlohmann::ordered_json operator()(const WeylTransformNode& n) const {
    nlohmann::ordered_json j;
    j["op"] = "weyl";
    j["measure"] = measure_to_json_obj(n.measure);
    return j;
  }
  nlohmann::ordered_json operator()(const ConstImagNode& n) const {
    return {{"op", "const_imag"}, {"c", n.c}};
  }
  nlohmann::ordered_json operator()(const ExpTransportNode& n) const {
    return {{"op", "exp_transport"}, {"ell", n.ell}, {"sign", n.sign}};
  }
  nlohmann::ordered_json operator()(const MoebiusNode& n) const {
    nlohmann::ordered_json j;
    j["op"] = "moebius";
    j["a"] = cplx_to_json(n.a);
    j["b"] = cplx_to_json(n.b);
    j["c"] = cplx_to_json(n.c);
    j["d"] = cplx_to_json(n.d);
    j["inner"] = expr_to_json_obj(n.inner);
    return j;
  }
  nlohmann::ordered_json operator()(const ProductNode& n) const {
    nlohmann::ordered_json j;
    j["op"] = "product";
    j["factors"] = nlohmann::ordered_json::array();
    for (const ExprPtr& f : n.factors) j["factors"].push_back(expr_to_json_obj(f));
    return j;
  }
  nlohmann::ordered_json operator()(const ScaleNode& n) const {
    nlohmann::ordered_json j;
    j["op"] = "scale";
    j["r"] = n.factor;
    j["inner"] = expr_to_json_obj(n.inner);
    return j;
  }
  nlohmann::ordered_json operator()(const NegReciprocalNode& n) const {
    nlohmann::ordered_json j;
    j["op"] = "neg_reciprocal";
    j["inner"] = expr_to_json_obj(n.inner);
    return j;
  }
  nlohmann::ordered_json operator()(const PowerNode& n) const {
    nlohmann::ordered_json j;
    j["op"] = "power";
    j["n"] = n.n;
    j["inner"] = expr_to_json_obj(n.inner);
    return j;
  }
};

}  // namespace

nlohmann::ordered_json expr_to_json_obj(const ExprPtr& f) {
  return std::visit(JsonWriter{}, f->node());
}

ExprPtr expr_from_json_obj(const nlohmann::json& j, int depth) {
  if (depth > kMaxJsonDepth) {
    throw ParseError("FuncExpr: tree depth limit exceeded");
  }
  if (!j.is_object() || !j.contains("op")) {
    throw ParseError("FuncExpr: node objects need an \"op\" field");
  }
  const std::string op = j.at("op").get<std::string>();
  try {
    if (op == "weyl") {
      return expr::weyl(measure_from_json_obj(j.at("measure")));
    }
    if (op == "const_imag") {
      return expr::const_imag(j.at("c").get<double>());
    }
    if (op == "exp_transport") {
      return expr::exp_transport(j.at("ell").get<double>(), j.at("sign").get<int>());
    }
    if (op == "moebius") {
      return expr::moebius(cplx_from_json(j.at("a")), cplx_from_json(j.at("b")),
                           cplx_from_json(j.at("c")), cplx_from_json(j.at("d")),
                           expr_from_json_obj(j.at("inner"), depth + 1));
    }
    if (op == "product") {
      std::vector<ExprPtr> factors;
      for (const auto& fj : j.at("factors")) {
        factors.push_back(expr_from_json_obj(fj, depth + 1));
      }
      return expr::product(std::move(factors));
    }
    if (op == "scale") {
      return expr::scale(j.at("r").get<double>(),
                         expr_from_json_obj(j.at("inner"), depth + 1));
    }
    if (op == "neg_reciprocal") {
      return expr::neg_reciprocal(expr_from_json_obj(j.at("inner"), depth + 1));
    }
    if (op == "power") {
      return expr::power(expr_from_json_obj(j.at("inner"), depth + 1),
                         j.at("n").get<int>());
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError("FuncExpr: node \"" + op + "\": " + e.what());
  }
  throw ParseError("FuncExpr: unknown op \"" + op + "\"");
}

}  // namespace detail

std::string to_json(const ExprPtr& f) {
  if (!f) throw std::invalid_argument("to_json: null expression");
  nlohmann::ordered_json j = detail::expr_to_json_obj(f);
  j["schema"] = 1;
  return j.dump();
}

ExprPtr expr_from_json(std::string_view text) {
  nlohmann::json j = detail::parse_json(text);
  detail::require_schema(j, "FuncExpr");
  return detail::expr_from_json_obj(j);
}

}  // namespace hnl
