#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ers {

/// Base class for every error raised by this library. `kind()` is a stable
/// machine-readable identifier used by the CLI's error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define ERS_DEFINE_ERROR(Name)                                          \
  struct Name : Error {                                                 \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}        \
  }

// trajectory_store
ERS_DEFINE_ERROR(MissingColumnError);
ERS_DEFINE_ERROR(RaggedHorizonError);
ERS_DEFINE_ERROR(NonFiniteError);
ERS_DEFINE_ERROR(EmptyFileError);
ERS_DEFINE_ERROR(IndexOutOfRangeError);
ERS_DEFINE_ERROR(DuplicateChannelError);
ERS_DEFINE_ERROR(LabelCountMismatchError);

// tube_geometry
ERS_DEFINE_ERROR(EmptySelectionError);
ERS_DEFINE_ERROR(DimensionMismatchError);
ERS_DEFINE_ERROR(EmptyDatasetError);

// ers_solver
ERS_DEFINE_ERROR(AlphaOutOfRangeError);
ERS_DEFINE_ERROR(CombinatorialBlowupError);
ERS_DEFINE_ERROR(InstanceInvalidError);
ERS_DEFINE_ERROR(NoIncumbentError);

// dist_harness
ERS_DEFINE_ERROR(InvalidParametersError);
ERS_DEFINE_ERROR(GridMismatchError);
ERS_DEFINE_ERROR(CurveTooShortError);

// mode_classifier
ERS_DEFINE_ERROR(LengthMismatchError);
ERS_DEFINE_ERROR(SingleClassError);
ERS_DEFINE_ERROR(NoConvergenceError);

// driving_synth
ERS_DEFINE_ERROR(EmptyOptionListError);
ERS_DEFINE_ERROR(HeterogeneousLogsError);

// metrics
ERS_DEFINE_ERROR(MissingTubeForModeError);
ERS_DEFINE_ERROR(EmptyValidationSetError);
ERS_DEFINE_ERROR(NegativeSpeedError);
ERS_DEFINE_ERROR(ZeroBaselineAreaError);

#undef ERS_DEFINE_ERROR

}  // namespace ers
