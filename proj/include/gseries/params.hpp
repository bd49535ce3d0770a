#pragma once

#include <optional>
#include <string>

#include "gseries/scalar.hpp"

namespace gseries {

/// Named real parameters of an expansion family. Only the ones a family
/// declares are read; the rest stay empty.
struct Params {
  std::optional<Scalar> alpha;
  std::optional<Scalar> beta;
  std::optional<Scalar> w;
  std::optional<Scalar> a1;
  std::optional<Scalar> a2;

  /// Stable text key, e.g. "alpha=2;w=1/2". Used for caching and dumps.
  std::string key() const;
};

}  // namespace gseries
