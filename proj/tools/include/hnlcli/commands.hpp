#pragma once

#include <cstdint>
#include <string>

#include "hnlcli/grid.hpp"

namespace hnlcli {

// Exit codes shared by the subcommands: 0 success, 2 input parse error,
// 3 evaluation/validation error.  Output files are written atomically
// (temp file + rename); no partial files are left on failure.

int cmd_eval(const std::string& func_file, const GridSpec& grid,
             const std::string& out_path);

int cmd_classify(const std::string& func_file, double tol);

int cmd_couple(const std::string& sys1_path, const std::string& sys2_path,
               const std::string& out_path);

// Suites: examples | matrices | resolvent | attractor | all.
// Prints one JSON line per check plus a summary; exit 0 iff all pass.
int cmd_verify(const std::string& suite, std::uint64_t seed);

}  // namespace hnlcli
