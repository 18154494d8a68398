#pragma once

#include <string_view>
#include <vector>

#include "hnl/complex.hpp"

namespace hnlcli {

enum class HalfPlane { Upper, Lower, Both };

// Rectangular evaluation grid.  The imaginary range is a magnitude range;
// the half-plane selects the sign(s).  Points with |Im z| < 1e-6 are never
// emitted.
struct GridSpec {
  double re_min = -3.0;
  double re_max = 3.0;
  int re_steps = 13;
  double im_min = 0.25;
  double im_max = 4.0;
  int im_steps = 8;
  HalfPlane half_plane = HalfPlane::Both;
};

// Parses "re_min:re_max:steps,im_min:im_max:steps".
GridSpec parse_grid(std::string_view text, HalfPlane half_plane);

HalfPlane parse_half_plane(std::string_view text);

// Upper-half-plane rows first (ascending imaginary part, ascending real part
// within a row), then the mirrored lower rows when requested.
std::vector<hnl::Cplx> make_grid(const GridSpec& spec);

}  // namespace hnlcli
