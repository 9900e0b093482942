#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include "igeom/starbody.hpp"

namespace ig {

class BodySpecError : public std::runtime_error {
 public:
  BodySpecError(int line, const std::string& message)
      : std::runtime_error("body spec line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the key-value body specification format:
///
///   kind k_radial_sum
///   dim 5
///   k 2
///   begin_part
///     kind ellipsoid
///     dim 5
///     axes 1 2 3 0.5 1
///   end_part
///   begin_part
///     kind ball
///     dim 5
///   end_part
///
/// Kinds: ball (radius), ellipsoid (axes | matrix), lp_ball (p, axes),
/// k_radial_sum (k, parts), radial_product (k1, k2, 2 parts),
/// linear_image (matrix, 1 part), section (frame, 1 part).
StarBody load_body_spec(std::istream& in);
StarBody load_body_spec_file(const std::string& path);

}  // namespace ig
