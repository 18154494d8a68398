#include "hnlcli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hnl/donoghue.hpp"
#include "hnl/expr.hpp"
#include "hnl/lsystem.hpp"

namespace hnlcli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw hnl::ParseError("cannot open \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Write-to-temp then rename, so failures never leave partial output behind.
void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw hnl::Error("cannot write \"" + tmp.string() + "\"");
    }
    out << content;
    if (!out.good()) {
      throw hnl::Error("short write to \"" + tmp.string() + "\"");
    }
  }
  fs::rename(tmp, target);
}

// 17 significant digits: round-trip exact for IEEE doubles.
std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

int cmd_eval(const std::string& func_file, const GridSpec& grid,
             const std::string& out_path) {
  hnl::ExprPtr f;
  try {
    f = hnl::expr_from_json(read_file(func_file));
  } catch (const hnl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }

  std::ostringstream csv;
  csv << "z_re,z_im,f_re,f_im\n";
  try {
    for (hnl::Cplx z : make_grid(grid)) {
      hnl::Cplx v;
      try {
        v = hnl::eval(f, z);
      } catch (const hnl::Error& e) {
        std::cerr << "evaluation error at z = (" << fmt17(z.real()) << ", "
                  << fmt17(z.imag()) << "): " << e.what() << "\n";
        return 3;
      }
      csv << fmt17(z.real()) << ',' << fmt17(z.imag()) << ','
          << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
    }
    write_file_atomic(out_path, csv.str());
  } catch (const hnl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

int cmd_classify(const std::string& func_file, double tol) {
  hnl::ExprPtr f;
  try {
    f = hnl::expr_from_json(read_file(func_file));
  } catch (const hnl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
  try {
    std::cout << hnl::to_json(hnl::classification_report(f, tol)) << "\n";
  } catch (const hnl::Error& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

int cmd_couple(const std::string& sys1_path, const std::string& sys2_path,
               const std::string& out_path) {
  hnl::LSystem a{hnl::VonNeumannKappa(0.0), hnl::Hypothesis::Setup, {1, 0},
                 nullptr, nullptr, ""};
  hnl::LSystem b = a;
  try {
    a = hnl::lsystem_from_json(read_file(sys1_path));
    b = hnl::lsystem_from_json(read_file(sys2_path));
  } catch (const hnl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
  try {
    const hnl::LSystem coupled = hnl::couple(a, b);
    write_file_atomic(out_path, hnl::to_json(coupled) + "\n");
    const hnl::ClassificationReport report =
        hnl::classification_report(coupled.impedance);
    nlohmann::ordered_json info;
    info["kappa"] = coupled.kappa.value();
    info["hypothesis"] = std::string(hnl::to_string(coupled.hypothesis));
    nlohmann::json class_report = nlohmann::json::parse(hnl::to_json(report));
    info["class"] = class_report["class"];
    info["class_kappa"] = class_report["kappa"];
    std::cout << info.dump() << "\n";
  } catch (const hnl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace hnlcli
