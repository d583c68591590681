#pragma once

#include <stdexcept>
#include <string>

#include "mwg/mwg.h"

namespace mwgcli {

enum ExitCode { exit_ok = 0, exit_internal = 1, exit_config = 2, exit_regime = 3, exit_io = 4 };

class CliError : public std::runtime_error {
 public:
  CliError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

inline ExitCode exit_code_for(mwg_status s) {
  switch (s) {
    case MWG_OK: return exit_ok;
    case MWG_ERR_INVALID_INPUT: return exit_config;
    case MWG_ERR_DOMAIN:
    case MWG_ERR_RESOLUTION:
    case MWG_ERR_INTEGRATOR:
    case MWG_ERR_REGIME: return exit_regime;
    case MWG_ERR_IO: return exit_io;
    default: return exit_internal;
  }
}

// Throws CliError carrying the library message when s is not MWG_OK.
inline void check(mwg_status s) {
  if (s != MWG_OK) throw CliError(exit_code_for(s), std::string(mwg_status_name(s)) + ": " + mwg_last_error());
}

}  // namespace mwgcli
