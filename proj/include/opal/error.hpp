// Library-wide exception type: every reported failure carries a message that
// states what was violated, not where in the code it happened.
#pragma once

#include <stdexcept>

namespace opal {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace opal
