#include "hnlcli/grid.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "hnl/errors.hpp"

namespace hnlcli {

namespace {

constexpr double kMinImag = 1e-6;

struct Range {
  double lo;
  double hi;
  int steps;
};

Range parse_range(std::string_view text) {
  const auto first = text.find(':');
  const auto second = text.find(':', first + 1);
  if (first == std::string_view::npos || second == std::string_view::npos) {
    throw hnl::ParseError("grid: each range is min:max:steps");
  }
  try {
    Range r;
    r.lo = std::stod(std::string(text.substr(0, first)));
    r.hi = std::stod(std::string(text.substr(first + 1, second - first - 1)));
    r.steps = std::stoi(std::string(text.substr(second + 1)));
    return r;
  } catch (const std::exception&) {
    throw hnl::ParseError("grid: malformed range \"" + std::string(text) + "\"");
  }
}

std::vector<double> linspace(const Range& r) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(r.steps));
  if (r.steps == 1) {
    out.push_back(r.lo);
    return out;
  }
  const double h = (r.hi - r.lo) / static_cast<double>(r.steps - 1);
  for (int i = 0; i < r.steps; ++i) {
    out.push_back(r.lo + h * static_cast<double>(i));
  }
  return out;
}

}  // namespace

HalfPlane parse_half_plane(std::string_view text) {
  if (text == "upper") return HalfPlane::Upper;
  if (text == "lower") return HalfPlane::Lower;
  if (text == "both") return HalfPlane::Both;
  throw hnl::ParseError("half-plane must be upper, lower or both");
}

GridSpec parse_grid(std::string_view text, HalfPlane half_plane) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw hnl::ParseError("grid: expected re_min:re_max:steps,im_min:im_max:steps");
  }
  const Range re = parse_range(text.substr(0, comma));
  const Range im = parse_range(text.substr(comma + 1));
  if (re.steps < 1 || im.steps < 1) {
    throw hnl::ParseError("grid: steps must be >= 1");
  }
  GridSpec spec;
  spec.re_min = re.lo;
  spec.re_max = re.hi;
  spec.re_steps = re.steps;
  spec.im_min = im.lo;
  spec.im_max = im.hi;
  spec.im_steps = im.steps;
  spec.half_plane = half_plane;
  return spec;
}

std::vector<hnl::Cplx> make_grid(const GridSpec& spec) {
  if (spec.re_steps < 1 || spec.im_steps < 1) {
    throw hnl::ParseError("grid: steps must be >= 1");
  }
  const std::vector<double> res =
      linspace({spec.re_min, spec.re_max, spec.re_steps});
  std::vector<double> ims;
  for (double im : linspace({spec.im_min, spec.im_max, spec.im_steps})) {
    if (std::abs(im) >= kMinImag) ims.push_back(std::abs(im));
  }
  std::vector<hnl::Cplx> grid;
  if (spec.half_plane != HalfPlane::Lower) {
    for (double im : ims)
      for (double re : res) grid.emplace_back(re, im);
  }
  if (spec.half_plane != HalfPlane::Upper) {
    for (double im : ims)
      for (double re : res) grid.emplace_back(re, -im);
  }
  return grid;
}

}  // namespace hnlcli
