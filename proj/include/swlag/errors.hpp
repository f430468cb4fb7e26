#pragma once

#include <stdexcept>
#include <string>

namespace swlag {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidConfig : Error {
  using Error::Error;
};

struct SingularStencil : Error {
  using Error::Error;
};

struct MeshTangling : Error {
  long step;
  MeshTangling(const std::string& what, long step_index)
      : Error(what), step(step_index) {}
};

struct NonConvergence : Error {
  double last_defect;
  int iterations;
  NonConvergence(const std::string& what, double defect, int iters)
      : Error(what), last_defect(defect), iterations(iters) {}
};

struct NumericalBlowup : Error {
  using Error::Error;
};

struct NonPhysicalState : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace swlag
