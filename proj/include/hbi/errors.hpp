#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hbi {

/// Stable machine-readable failure categories. The CLI maps these to exit
/// codes and prints the category name next to the message; tests assert on
/// the code rather than on message text.
enum class errc {
  invalid_input,      // bad argument, invariant violation, configuration error
  invalid_point,      // point does not lie on the manifold
  out_of_chart,       // point outside the chart domain / image
  duplicate_node,     // node set contains coincident points
  inconsistent_data,  // derivative data keys do not match the multi-index set
  invalid_index,      // multi-index not present in a node's set
  step_too_large,     // finite-difference step too large for the node spacing
  order_exceeded,     // derivative order beyond a test function's max_order
  unknown_function,   // no builtin test function with that name
  uncovered_point,    // localized evaluation found no node within delta
  parse,              // malformed input file
  io,                 // unreadable or unwritable path
};

const char* errc_name(errc code);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

/// Carries the offending evaluation point and the localization radius so a
/// caller can retry with a larger delta. `point_index` is >= 0 when the
/// failure came from a batch evaluation.
class uncovered_point_error : public error {
 public:
  uncovered_point_error(std::vector<double> point_ambient, double delta,
                        long point_index = -1);

  const std::vector<double>& point() const { return point_; }
  double delta() const { return delta_; }
  long point_index() const { return index_; }

  uncovered_point_error with_index(long index) const {
    return uncovered_point_error(point_, delta_, index);
  }

 private:
  std::vector<double> point_;
  double delta_;
  long index_;
};

}  // namespace hbi
