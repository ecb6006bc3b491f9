#pragma once

#include <stdexcept>
#include <string>

namespace bracketlab {

// All library failures derive from Error so callers can catch once at the
// command boundary and map to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BRACKETLAB_DEFINE_ERROR(Name)        \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

// core_prefs
BRACKETLAB_DEFINE_ERROR(NonMonotoneModel);
BRACKETLAB_DEFINE_ERROR(InvalidModel);
BRACKETLAB_DEFINE_ERROR(InvalidLottery);

// bracketing_agent
BRACKETLAB_DEFINE_ERROR(ModeUnsupported);
BRACKETLAB_DEFINE_ERROR(NoIndifference);

// experiment_sim
BRACKETLAB_DEFINE_ERROR(InvalidPopulation);

// estimators
BRACKETLAB_DEFINE_ERROR(EmptySample);
BRACKETLAB_DEFINE_ERROR(TooLarge);
BRACKETLAB_DEFINE_ERROR(Degenerate);
BRACKETLAB_DEFINE_ERROR(NotConverged);
BRACKETLAB_DEFINE_ERROR(AllCensored);
BRACKETLAB_DEFINE_ERROR(RankDeficient);
BRACKETLAB_DEFINE_ERROR(InvalidParams);

// theory_checks
BRACKETLAB_DEFINE_ERROR(TieDetected);
BRACKETLAB_DEFINE_ERROR(ChosenNotInMenu);

// cli_io
BRACKETLAB_DEFINE_ERROR(SchemaError);
BRACKETLAB_DEFINE_ERROR(ConfigError);

#undef BRACKETLAB_DEFINE_ERROR

}  // namespace bracketlab
