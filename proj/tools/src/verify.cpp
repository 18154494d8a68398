#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "hnl/donoghue.hpp"
#include "hnl/lsystem.hpp"
#include "hnl/models.hpp"
#include "hnlcli/commands.hpp"

namespace hnlcli {

namespace {

using hnl::Cplx;

struct CheckSink {
  int checks = 0;
  int failures = 0;

  void report(const std::string& name, double residual, double tol) {
    const bool pass = residual < tol;
    ++checks;
    if (!pass) ++failures;
    nlohmann::ordered_json j;
    j["check"] = name;
    j["residual"] = residual;
    j["tol"] = tol;
    j["pass"] = pass;
    std::cout << j.dump() << "\n";
  }

  void expect(const std::string& name, bool pass) {
    ++checks;
    if (!pass) ++failures;
    nlohmann::ordered_json j;
    j["check"] = name;
    j["pass"] = pass;
    std::cout << j.dump() << "\n";
  }
};

std::vector<Cplx> verification_grid() { return hnl::default_validation_grid(); }

double max_transfer_residual(const hnl::LSystem& a, const hnl::LSystem& b,
                             const std::vector<Cplx>& grid) {
  double residual = 0.0;
  for (Cplx z : grid) {
    residual = std::max(
        residual, std::abs(hnl::eval(a.transfer, z) - hnl::eval(b.transfer, z)));
  }
  return residual;
}

void suite_examples(CheckSink& sink) {
  const std::vector<Cplx> grid = verification_grid();

  // Serial connection of two transport pieces against the full interval.
  {
    const hnl::LSystem coupled =
        hnl::couple(hnl::transport_system(0.4, hnl::Hypothesis::Setup),
                    hnl::transport_system(0.6, hnl::Hypothesis::Setup));
    const hnl::LSystem whole = hnl::transport_system(1.0, hnl::Hypothesis::Setup);
    sink.report("examples.coupling_transfer_product",
                max_transfer_residual(coupled, whole, grid), 1e-12);
    sink.report("examples.coupling_kappa_product",
                std::abs(coupled.kappa.value() - std::exp(-1.0)), 1e-15);
    const hnl::DonoghueClassTag tag = hnl::classify(coupled.impedance);
    sink.expect("examples.coupling_class_is_Mk",
                tag.kind == hnl::DonoghueClass::MKappa);
    sink.report("examples.coupling_class_kappa",
                std::abs(tag.kappa - std::exp(-1.0)), 1e-12);
  }

  // Two anti-hypothesis pieces couple to a Setup system; the transfer signs
  // cancel.
  {
    const hnl::LSystem coupled =
        hnl::couple(hnl::transport_system(0.4, hnl::Hypothesis::SetupPrime),
                    hnl::transport_system(0.6, hnl::Hypothesis::SetupPrime));
    sink.expect("examples.prime_pair_gives_setup",
                coupled.hypothesis == hnl::Hypothesis::Setup);
    const hnl::LSystem whole = hnl::transport_system(1.0, hnl::Hypothesis::Setup);
    sink.report("examples.prime_pair_sign_cancellation",
                max_transfer_residual(coupled, whole, grid), 1e-12);
    const hnl::DonoghueClassTag tag = hnl::classify(coupled.impedance);
    sink.expect("examples.prime_pair_class_is_Mk",
                tag.kind == hnl::DonoghueClass::MKappa);
  }

  // Mixed pair lands in the inverse class.
  {
    const hnl::LSystem coupled =
        hnl::couple(hnl::transport_system(0.4, hnl::Hypothesis::Setup),
                    hnl::transport_system(0.6, hnl::Hypothesis::SetupPrime));
    sink.expect("examples.mixed_pair_gives_setup1",
                coupled.hypothesis == hnl::Hypothesis::SetupPrime);
    const hnl::DonoghueClassTag tag = hnl::classify(coupled.impedance);
    sink.expect("examples.mixed_pair_class_is_MkInv",
                tag.kind == hnl::DonoghueClass::MKappaInv);
  }

  // Split-interval coupling with kappa1 = 0: closed form versus the factored
  // oracle, and the absorption property.
  {
    const hnl::ExprPtr direct = hnl::example3_livsic(1.0, 0.4);
    const hnl::ExprPtr factored = hnl::example3_livsic_factored(1.0, 0.4);
    double residual = 0.0;
    for (Cplx z : grid) {
      if (z.imag() < 0) continue;
      residual = std::max(residual,
                          std::abs(hnl::eval(direct, z) - hnl::eval(factored, z)));
    }
    sink.report("examples.split_livsic_factorization", residual, 1e-11);

    const hnl::LSystem piece1 = hnl::make_lsystem(
        hnl::transport_livsic_expr(0.4), hnl::VonNeumannKappa(0.0),
        hnl::Hypothesis::Setup, "split-head");
    const hnl::LSystem coupled =
        hnl::couple(piece1, hnl::transport_system(0.6, hnl::Hypothesis::Setup));
    sink.expect("examples.absorption_kappa_is_zero",
                coupled.kappa.value() == 0.0);
    const hnl::DonoghueClassTag tag = hnl::classify(coupled.impedance);
    sink.expect("examples.absorption_class_is_M",
                tag.kind == hnl::DonoghueClass::M);
  }
}

void suite_matrices(CheckSink& sink) {
  const double kappas[] = {0.0, std::exp(-1.0), 0.5, 0.9};
  for (double kappa : kappas) {
    for (int u : {+1, -1}) {
      const hnl::StarExtensionMatrices m = hnl::star_extension_matrices(kappa, u);
      const Cplx expected_h = u == 1 ? Cplx{0.0, -1.0 / (1.0 + kappa)}
                                     : Cplx{0.0, 1.0 / (1.0 - kappa)};
      std::ostringstream name;
      name << "matrices.H(kappa=" << kappa << ",U=" << u << ")";
      sink.report(name.str(), std::abs(m.H - expected_h), 1e-14);

      const hnl::ImPartDecomposition d = hnl::im_part_decomposition(m);
      const double expected_weight = u == 1
                                         ? (1.0 - kappa) / (2.0 + 2.0 * kappa)
                                         : (1.0 + kappa) / (2.0 - 2.0 * kappa);
      std::ostringstream wname;
      wname << "matrices.im_weight(kappa=" << kappa << ",U=" << u << ")";
      sink.report(wname.str(), std::abs(d.weight - expected_weight), 1e-14);

      const Eigen::Matrix2cd im_part = (m.S_A - m.S_Astar) / Cplx{0.0, 2.0};
      const Eigen::Matrix2cd expected_im =
          expected_weight * d.pattern.cast<Cplx>();
      std::ostringstream iname;
      iname << "matrices.im_pattern(kappa=" << kappa << ",U=" << u << ")";
      sink.report(iname.str(), (im_part - expected_im).cwiseAbs().maxCoeff(),
                  1e-14);

      Eigen::Matrix2cd expected_re;
      if (u == 1) {
        expected_re << Cplx{0.0, -0.5}, Cplx{0.0, -0.5}, Cplx{0.0, 0.5},
            Cplx{0.0, 0.5};
      } else {
        expected_re << Cplx{0.0, -0.5}, Cplx{0.0, 0.5}, Cplx{0.0, -0.5},
            Cplx{0.0, 0.5};
      }
      const Eigen::Matrix2cd re_part = (m.S_A + m.S_Astar) / 2.0;
      std::ostringstream rname;
      rname << "matrices.re_pattern(kappa=" << kappa << ",U=" << u << ")";
      sink.report(rname.str(), (re_part - expected_re).cwiseAbs().maxCoeff(),
                  1e-14);
    }
  }
}

void suite_resolvent(CheckSink& sink, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> loc(-3.0, 3.0);
  std::uniform_real_distribution<double> wgt(0.1, 1.0);
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  std::uniform_real_distribution<double> im(0.3, 2.5);
  std::uniform_int_distribution<int> dim(2, 8);

  const double kappas[] = {0.0, 0.3, 0.7};
  for (double kappa : kappas) {
    const int n = dim(rng);
    std::vector<hnl::Atom> atoms;
    while (static_cast<int>(atoms.size()) < n) {
      const double x = loc(rng);
      bool separated = true;
      for (const hnl::Atom& a : atoms) {
        if (std::abs(a.location - x) < 1e-3) separated = false;
      }
      if (separated) atoms.push_back({x, wgt(rng)});
    }
    double mass = 0.0;
    for (const hnl::Atom& a : atoms) {
      mass += a.weight / (1.0 + a.location * a.location);
    }
    for (hnl::Atom& a : atoms) a.weight /= mass;

    const hnl::DiscreteModelTriple triple =
        hnl::model_triple(hnl::SpectralMeasure::atomic(atoms), kappa);

    double worst = 0.0;
    int pairs = 0;
    while (pairs < 20) {
      const Cplx z{re(rng), im(rng)};
      const Cplx w{re(rng), -im(rng)};
      Eigen::MatrixXcd rz, rw;
      try {
        rz = hnl::resolvent_T(triple, z);
        rw = hnl::resolvent_T(triple, w);
      } catch (const hnl::SpectralPointError&) {
        continue;  // resample near-eigenvalue draws
      }
      const Eigen::MatrixXcd identity_gap = rz - rw - (z - w) * (rz * rw);
      worst = std::max(worst, identity_gap.cwiseAbs().maxCoeff());
      ++pairs;
    }
    std::ostringstream name;
    name << "resolvent.first_identity(kappa=" << kappa << ",dim=" << n << ")";
    sink.report(name.str(), worst, 1e-10);

    if (kappa == 0.0) {
      // The kappa = 0 resolvent must match the (M - i)^{-1} closed form.
      const Cplx z{0.4, 1.3};
      const Eigen::MatrixXcd rt = hnl::resolvent_T(triple, z);
      Eigen::MatrixXcd closed = hnl::resolvent_B(triple, z);
      const Cplx p = 1.0 / (hnl::weyl_eval(triple.measure, z) - Cplx{0.0, 1.0});
      const auto& as = triple.measure.atoms();
      for (int j = 0; j < triple.dimension; ++j) {
        for (int k = 0; k < triple.dimension; ++k) {
          const Cplx gj = 1.0 / (as[static_cast<std::size_t>(j)].location - z);
          const Cplx gk = 1.0 / (as[static_cast<std::size_t>(k)].location - z);
          closed(j, k) -= p * gj * as[static_cast<std::size_t>(k)].weight * gk;
        }
      }
      sink.expect("resolvent.kappa0_closed_form_exact",
                  (rt - closed).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

void suite_attractor(CheckSink& sink) {
  const hnl::LSystem sys = hnl::transport_system(1.0, hnl::Hypothesis::Setup);
  const Cplx lower[] = {Cplx{0.0, -1.0}};
  const Cplx upper[] = {Cplx{0.0, 1.0}};
  const auto rows = hnl::attractor_diagnostics(sys, lower, upper, 20);

  double w_rel = 0.0, v_rel = 0.0;
  bool kappa_monotone = true;
  double prev_kappa = 1.0;
  for (const hnl::AttractorRow& row : rows) {
    const double expected_w = std::exp(-static_cast<double>(row.n));
    const double expected_v =
        2.0 / (std::exp(static_cast<double>(row.n)) + 1.0);
    w_rel = std::max(w_rel, std::abs(row.sup_lower_transfer - expected_w) /
                                expected_w);
    v_rel = std::max(v_rel, std::abs(row.sup_upper_impedance_err - expected_v) /
                                expected_v);
    if (row.kappa_pow >= prev_kappa) kappa_monotone = false;
    prev_kappa = row.kappa_pow;
  }
  sink.report("attractor.transfer_decay_rel", w_rel, 1e-12);
  sink.report("attractor.impedance_to_i_rel", v_rel, 1e-12);
  sink.expect("attractor.kappa_monotone_to_zero", kappa_monotone);

  const hnl::LSystem model = hnl::attractor_model();
  double v_err = 0.0;
  for (Cplx z : verification_grid()) {
    if (z.imag() <= 0) continue;
    v_err = std::max(v_err,
                     std::abs(hnl::eval(model.impedance, z) - Cplx{0.0, 1.0}));
  }
  sink.expect("attractor.model_impedance_is_i", v_err == 0.0);
}

}  // namespace

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  CheckSink sink;
  const bool all = suite == "all";
  if (!all && suite != "examples" && suite != "matrices" &&
      suite != "resolvent" && suite != "attractor") {
    std::cerr << "unknown suite \"" << suite
              << "\" (expected examples|matrices|resolvent|attractor|all)\n";
    return 2;
  }
  try {
    if (all || suite == "examples") suite_examples(sink);
    if (all || suite == "matrices") suite_matrices(sink);
    if (all || suite == "resolvent") suite_resolvent(sink, seed);
    if (all || suite == "attractor") suite_attractor(sink);
  } catch (const hnl::Error& e) {
    std::cerr << "verification aborted: " << e.what() << "\n";
    return 1;
  }
  nlohmann::ordered_json summary;
  summary["suite"] = suite;
  summary["checks"] = sink.checks;
  summary["failures"] = sink.failures;
  summary["seed"] = seed;
  std::cout << summary.dump() << "\n";
  return sink.failures == 0 ? 0 : 1;
}

}  // namespace hnlcli
