#pragma once

#include <stdexcept>

namespace bohr {

/// Argument outside its permitted range (radius, index, parameter).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent configuration (unknown kind, missing parameter,
/// mismatched family/instance pairing).
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A series whose tail could not be certified below the requested tolerance,
/// or one that visibly diverges (term ratio >= 1 persistently).
class non_convergent_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A named precondition of a theorem-backed operation does not hold.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-posed input whose answer degenerates (e.g. the radius collapses to 0).
class degenerate_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bohr
