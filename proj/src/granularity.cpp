#include "qsr/granularity.hpp"

#include <string>

#include "qsr/error.hpp"

namespace qsr {

Granularity::Granularity(int m) : m_(m) {
  if (m < 1) throw InvalidArgument("granularity m must be >= 1");
  if (m > kMax) {
    throw UnsupportedConfiguration("granularity m must be <= " +
                                   std::to_string(kMax));
  }
}

}  // namespace qsr
