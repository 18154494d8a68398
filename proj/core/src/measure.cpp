#include "hnl/measure.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "json_detail.hpp"

namespace hnl {

namespace {

// Gauss-Legendre abscissae/weights on [a,b].
void gauss_legendre(double a, double b, int n, std::vector<double>& x,
                    std::vector<double>& w) {
  std::unique_ptr<gsl_integration_glfixed_table,
                  decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)),
            &gsl_integration_glfixed_table_free);
  if (!table) {
    throw std::invalid_argument("SpectralMeasure: bad quadrature node count");
  }
  x.resize(static_cast<std::size_t>(n));
  w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &x[i],
                                  &w[i], table.get());
  }
}

double herglotz_kernel_mass(double lambda) { return 1.0 / (1.0 + lambda * lambda); }

}  // namespace

SpectralMeasure::SpectralMeasure(std::vector<Atom> atoms,
                                 std::vector<DensityPanel> panels)
    : atoms_(std::move(atoms)), panels_(std::move(panels)) {
  for (const Atom& a : atoms_) {
    if (!std::isfinite(a.location) || !std::isfinite(a.weight)) {
      throw std::invalid_argument("SpectralMeasure: non-finite atom");
    }
    if (a.weight <= 0.0) {
      throw std::invalid_argument("SpectralMeasure: atom weight must be > 0");
    }
  }
  std::vector<double> locs;
  locs.reserve(atoms_.size());
  for (const Atom& a : atoms_) locs.push_back(a.location);
  std::sort(locs.begin(), locs.end());
  if (std::adjacent_find(locs.begin(), locs.end()) != locs.end()) {
    throw std::invalid_argument("SpectralMeasure: atom locations must be pairwise distinct");
  }

  nodes_x_.resize(panels_.size());
  nodes_w_.resize(panels_.size());
  for (std::size_t k = 0; k < panels_.size(); ++k) {
    const DensityPanel& p = panels_[k];
    if (!std::isfinite(p.a) || !std::isfinite(p.b) || p.a >= p.b) {
      throw std::invalid_argument("SpectralMeasure: panel requires a < b");
    }
    if (p.nodes < 1) {
      throw std::invalid_argument("SpectralMeasure: panel needs at least one node");
    }
    if (p.density.size() != static_cast<std::size_t>(p.nodes)) {
      throw std::invalid_argument(
          "SpectralMeasure: density values must match the node count");
    }
    for (double rho : p.density) {
      if (!std::isfinite(rho) || rho < 0.0) {
        throw std::invalid_argument("SpectralMeasure: density must be finite and >= 0");
      }
    }
    gauss_legendre(p.a, p.b, p.nodes, nodes_x_[k], nodes_w_[k]);
  }

  const double mass = hnl::normalized_mass(*this);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("SpectralMeasure: normalized mass must be finite and > 0");
  }
}

Cplx weyl_eval(const SpectralMeasure& mu, Cplx z) {
  require_finite(z, "weyl_eval");
  if (z.imag() == 0.0) {
    for (const Atom& a : mu.atoms()) {
      if (z.real() == a.location) {
        std::ostringstream os;
        os << "weyl_eval: z = " << z.real() << " is an atom of the measure";
        throw DomainError(os.str());
      }
    }
    std::ostringstream os;
    os << "weyl_eval: z = " << z.real() << " lies on the real axis";
    throw DomainError(os.str());
  }

  Cplx sum{0.0, 0.0};
  for (const Atom& a : mu.atoms()) {
    sum += a.weight * (1.0 / (a.location - z) -
                       a.location * herglotz_kernel_mass(a.location));
  }
  for (std::size_t k = 0; k < mu.panels().size(); ++k) {
    const std::vector<double>& x = mu.panel_points(k);
    const std::vector<double>& w = mu.panel_weights(k);
    const std::vector<double>& rho = mu.panels()[k].density;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sum += w[i] * rho[i] *
             (1.0 / (x[i] - z) - x[i] * herglotz_kernel_mass(x[i]));
    }
  }
  return sum;
}

double normalized_mass(const SpectralMeasure& mu) {
  double mass = 0.0;
  for (const Atom& a : mu.atoms()) {
    mass += a.weight * herglotz_kernel_mass(a.location);
  }
  for (std::size_t k = 0; k < mu.panels().size(); ++k) {
    const std::vector<double>& x = mu.panel_points(k);
    const std::vector<double>& w = mu.panel_weights(k);
    const std::vector<double>& rho = mu.panels()[k].density;
    for (std::size_t i = 0; i < x.size(); ++i) {
      mass += w[i] * rho[i] * herglotz_kernel_mass(x[i]);
    }
  }
  return mass;
}

MeasureValidation validate(const SpectralMeasure& mu) {
  MeasureValidation v;
  v.normalized_mass = normalized_mass(mu);
  double total = 0.0;
  for (const Atom& a : mu.atoms()) total += a.weight;
  for (std::size_t k = 0; k < mu.panels().size(); ++k) {
    const std::vector<double>& w = mu.panel_weights(k);
    const std::vector<double>& rho = mu.panels()[k].density;
    for (std::size_t i = 0; i < w.size(); ++i) total += w[i] * rho[i];
  }
  v.total_mass = total;
  if (std::isfinite(total)) {
    // The representation theory asks for an infinite measure; any finite
    // atom/panel representation has finite total mass.  Class membership is
    // enforced through the normalized mass instead, so this is a note.
    v.finite_mass_note = true;
    v.notes.push_back(
        "finite representation: total mass is finite; class membership is "
        "tracked via the normalized mass only");
  }
  return v;
}

std::string to_json(const SpectralMeasure& mu) {
  nlohmann::ordered_json j = detail::measure_to_json_obj(mu);
  j["schema"] = 1;
  return j.dump();
}

SpectralMeasure measure_from_json(std::string_view text) {
  nlohmann::json j = detail::parse_json(text);
  detail::require_schema(j, "SpectralMeasure");
  return detail::measure_from_json_obj(j);
}

namespace detail {

nlohmann::ordered_json measure_to_json_obj(const SpectralMeasure& mu) {
  nlohmann::ordered_json j;
  j["atoms"] = nlohmann::json::array();
  for (const Atom& a : mu.atoms()) {
    j["atoms"].push_back({a.location, a.weight});
  }
  j["panels"] = nlohmann::json::array();
  for (const DensityPanel& p : mu.panels()) {
    nlohmann::ordered_json pj;
    pj["a"] = p.a;
    pj["b"] = p.b;
    pj["nodes"] = p.nodes;
    pj["density"] = p.density;
    j["panels"].push_back(pj);
  }
  return j;
}

SpectralMeasure measure_from_json_obj(const nlohmann::json& j) {
  try {
    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
      for (const auto& a : j.at("atoms")) {
        if (!a.is_array() || a.size() != 2) {
          throw ParseError("SpectralMeasure: atom entries are [location, weight]");
        }
        atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
      }
    }
    std::vector<DensityPanel> panels;
    if (j.contains("panels")) {
      for (const auto& pj : j.at("panels")) {
        DensityPanel p;
        p.a = pj.at("a").get<double>();
        p.b = pj.at("b").get<double>();
        p.nodes = pj.at("nodes").get<int>();
        p.density = pj.at("density").get<std::vector<double>>();
        panels.push_back(std::move(p));
      }
    }
    return SpectralMeasure(std::move(atoms), std::move(panels));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("SpectralMeasure: ") + e.what());
  }
}

nlohmann::json parse_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw ParseError("malformed JSON");
  }
  return j;
}

void require_schema(const nlohmann::json& j, const char* what) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != 1) {
    throw ParseError(std::string(what) + ": missing or unsupported \"schema\" (expected 1)");
  }
}

}  // namespace detail

}  // namespace hnl
