#pragma once

#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mwg/mwg.h"

namespace mwgcli {

struct SourceDeleter {
  void operator()(mwg_source* p) const { mwg_source_free(p); }
};
struct SignalDeleter {
  void operator()(mwg_signal* p) const { mwg_signal_free(p); }
};
struct DensityDeleter {
  void operator()(mwg_density* p) const { mwg_density_free(p); }
};

using Source = std::unique_ptr<mwg_source, SourceDeleter>;
using Signal = std::unique_ptr<mwg_signal, SignalDeleter>;
using Density = std::unique_ptr<mwg_density, DensityDeleter>;

inline Source closed_form_source(const mwg_grating& g, mwg_variant v) {
  mwg_source* p = nullptr;
  check(mwg_source_closed_form(&g, v, &p));
  return Source(p);
}

inline Source ladder_source(const mwg_grating& g, mwg_envelope e, mwg_ladder_method m, int jobs) {
  mwg_source* p = nullptr;
  check(mwg_source_ladder(&g, e, m, jobs, &p));
  return Source(p);
}

inline Source rabi_source(const mwg_rabi_config& c, mwg_rabi_method m, int jobs) {
  mwg_source* p = nullptr;
  check(mwg_source_rabi(&c, m, jobs, &p));
  return Source(p);
}

inline int max_ell(const Source& s) {
  int n = 0;
  check(mwg_source_max_ell(s.get(), &n));
  return n;
}

inline Signal kdtli_signal(const Source& s, const mwg_kdtli_config& c, int ell) {
  mwg_signal* p = nullptr;
  check(mwg_kdtli_signal(s.get(), &c, ell, &p));
  return Signal(p);
}

inline double kdtli_visibility(const Source& s, const mwg_kdtli_config& c, int ell) {
  double v = 0;
  check(mwg_kdtli_visibility(s.get(), &c, ell, &v));
  return v;
}

inline double minmax_visibility(const Signal& s) {
  double v = 0;
  check(mwg_signal_visibility_minmax(s.get(), &v));
  return v;
}

inline Density farfield(const Source& s, const mwg_farfield_config& c, const std::vector<double>& screen, int ell,
                        mwg_farfield_model m) {
  mwg_density* p = nullptr;
  check(mwg_farfield_density(s.get(), &c, screen.data(), screen.size(), ell, m, &p));
  return Density(p);
}

inline Density smooth(const Density& d, double sigma, mwg_resolution_kernel k) {
  mwg_density* p = nullptr;
  check(mwg_density_smooth(d.get(), sigma, k, &p));
  return Density(p);
}

inline std::string channel_label(int ell) { return ell == MWG_SUM ? "sum" : std::to_string(ell); }

}  // namespace mwgcli
