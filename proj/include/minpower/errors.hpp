#pragma once

#include <stdexcept>
#include <string>

namespace minpower {

// Each condition gets its own type so callers (and tests) can catch precisely.

struct CollinearInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingletonInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateHull : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownFace : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidAlpha : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotInHull : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InconsistentResult : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ImplicationViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PropertyViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TargetNotOnDiagram : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoFeasibleM : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace minpower
