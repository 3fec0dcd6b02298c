#pragma once

#include <cstdint>
#include <string>

namespace ptsym {

enum Flag : std::uint32_t {
  kFlagNone = 0,
  kExceedsGaussianBound = 1u << 0,  ///< tau > 0.5
  kNonphysical = 1u << 1,           ///< tau > 1
  kNonphysicalCovariance = 1u << 2, ///< sigma^PT not positive or complex symplectic spectrum
  kUndefinedRatio = 1u << 3,        ///< x/0 with x > 0
  kRegimeError = 1u << 4,           ///< quantity undefined in this regime
  kDivergent = 1u << 5,             ///< value diverges (exceptional point)
};

using Flags = std::uint32_t;

/// '|'-separated snake_case names in bit order, empty for no flags.
std::string format_flags(Flags f);

}  // namespace ptsym
