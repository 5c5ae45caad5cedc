#ifndef KGRAPH_ERRORS_HPP
#define KGRAPH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kgraph {

// Bad user input: malformed files, inconsistent graph data, parameters out
// of their documented domain.  CLI exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation could not be completed: iteration caps, enumeration caps,
// arithmetic overflow in exact solvers.  CLI exit code 2.
struct ComputeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical invariant that should hold for valid inputs was observed
// to fail.  CLI exit code 3.
struct PropertyViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kgraph

#endif
