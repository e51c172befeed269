#include "hbi/errors.hpp"

#include <sstream>

namespace hbi {

const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_input: return "invalid-input";
    case errc::invalid_point: return "invalid-point";
    case errc::out_of_chart: return "out-of-chart";
    case errc::duplicate_node: return "duplicate-node";
    case errc::inconsistent_data: return "inconsistent-data";
    case errc::invalid_index: return "invalid-index";
    case errc::step_too_large: return "step-too-large";
    case errc::order_exceeded: return "order-exceeded";
    case errc::unknown_function: return "unknown-function";
    case errc::uncovered_point: return "uncovered-point";
    case errc::parse: return "parse";
    case errc::io: return "io";
  }
  return "unknown";
}

namespace {

std::string describe_uncovered(const std::vector<double>& point, double delta,
                               long index) {
  std::ostringstream out;
  out << "no node within delta = " << delta << " of point (";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) out << ", ";
    out << point[i];
  }
  out << ")";
  if (index >= 0) out << " at batch index " << index;
  out << "; retry with a larger delta or enable the global fallback";
  return out.str();
}

}  // namespace

uncovered_point_error::uncovered_point_error(std::vector<double> point_ambient,
                                             double delta, long point_index)
    : error(errc::uncovered_point,
            describe_uncovered(point_ambient, delta, point_index)),
      point_(std::move(point_ambient)),
      delta_(delta),
      index_(point_index) {}

}  // namespace hbi
