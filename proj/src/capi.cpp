#include "mwg/mwg.h"

#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "error.hpp"
#include "farfield.hpp"
#include "grating.hpp"
#include "nearfield.hpp"
#include "params.hpp"
#include "rabi.hpp"
#include "talbot.hpp"

#ifndef MWG_VERSION
#define MWG_VERSION "0.0.0"
#endif

struct mwg_source {
  std::shared_ptr<const mwg::CoefficientSource> impl;
  std::optional<mwg::GratingParameters> quantum_grating;  // closed-form quantum sources only
  std::string name;
};

struct mwg_signal {
  mwg::FringeSignal impl;
  std::vector<double> components;
};

struct mwg_density {
  mwg::ScreenDensity impl;
};

namespace {

thread_local std::string last_error;

mwg_status fail(mwg_status s, const char* what) {
  last_error = what;
  return s;
}

template <class Fn>
mwg_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return MWG_OK;
  } catch (const mwg::Error& e) {
    return fail(static_cast<mwg_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MWG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MWG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MWG_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* name) {
  if (!p) throw mwg::InvalidInput(std::string(name) + " is null");
}

mwg::GratingParameters to_grating(const mwg_grating* g) {
  require(g, "grating");
  mwg::GratingParameters out;
  out.phi0 = g->phi0;
  out.n0 = g->n0;
  out.eta_p = g->eta_p;
  out.eta_a = g->eta_a;
  mwg::validate(out);
  return out;
}

mwg::BeamSetup to_beam(const mwg_beam* b) {
  require(b, "beam");
  return {b->power, b->waist_y, b->waist_z, b->wavelength, b->alpha_si, b->sigma_abs, b->velocity, b->mass};
}

mwg::Channel to_channel(int ell) {
  if (ell == MWG_SUM) return mwg::Channel::unconditional();
  if (ell < 0) throw mwg::InvalidInput("channel must be an absorption number >= 0 or MWG_SUM");
  return mwg::Channel::conditional(ell);
}

mwg::KdtliConfig to_kdtli(const mwg_source* src, const mwg_kdtli_config* c, int ell) {
  require(src, "source");
  require(c, "kdtli config");
  mwg::KdtliConfig out;
  out.open_fraction = c->open_fraction;
  out.talbot = c->talbot;
  out.velocity_spread = c->velocity_spread;
  out.jmax_cap = c->jmax_cap;
  if (c->shifts < 1) throw mwg::InvalidInput("kdtli: shifts must be >= 1");
  out.shifts = mwg::uniform_shifts(c->shifts);
  out.source = src->impl;
  out.channel = to_channel(ell);
  return out;
}

mwg::RabiConfig to_rabi(const mwg_rabi_config* c) {
  require(c, "rabi config");
  mwg::RabiConfig out;
  out.pulse_area = c->pulse_area;
  out.detuning = c->detuning;
  out.lifetime = c->lifetime;
  out.grid = c->grid;
  mwg::validate(out);
  return out;
}

mwg::LadderConfig to_ladder(const mwg_grating* g, mwg_envelope env, int jobs) {
  mwg::LadderConfig cfg;
  cfg.grating = to_grating(g);
  if (env != MWG_ENVELOPE_CONSTANT && env != MWG_ENVELOPE_GAUSSIAN) throw mwg::InvalidInput("unknown envelope");
  cfg.envelope = env == MWG_ENVELOPE_GAUSSIAN ? mwg::Envelope::gaussian : mwg::Envelope::constant;
  cfg.jobs = jobs;
  mwg::validate(cfg);
  return cfg;
}

mwg::LadderMethod to_method(mwg_ladder_method m) {
  switch (m) {
    case MWG_LADDER_ODE: return mwg::LadderMethod::ode;
    case MWG_LADDER_ANALYTIC: return mwg::LadderMethod::analytic;
    case MWG_LADDER_T1: return mwg::LadderMethod::t1_integral;
  }
  throw mwg::InvalidInput("unknown ladder method");
}

mwg::RabiMethod to_method(mwg_rabi_method m) {
  switch (m) {
    case MWG_RABI_EXACT: return mwg::RabiMethod::exact;
    case MWG_RABI_ODE: return mwg::RabiMethod::ode;
  }
  throw mwg::InvalidInput("unknown Rabi method");
}

}  // namespace

extern "C" {

const char* mwg_version(void) { return MWG_VERSION; }

const char* mwg_last_error(void) { return last_error.c_str(); }

const char* mwg_status_name(mwg_status status) {
  switch (status) {
    case MWG_OK: return "ok";
    case MWG_ERR_INVALID_INPUT: return "invalid input";
    case MWG_ERR_DOMAIN: return "domain error";
    case MWG_ERR_RESOLUTION: return "resolution error";
    case MWG_ERR_INTEGRATOR: return "integrator error";
    case MWG_ERR_REGIME: return "regime error";
    case MWG_ERR_IO: return "i/o error";
    case MWG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void mwg_grating_init(mwg_grating* g) {
  if (g) *g = {0.0, 0.0, 1.0, 1.0};
}

void mwg_kdtli_config_init(mwg_kdtli_config* c) {
  if (c) *c = {0.42, 1.0, 0.0, 64, 256};
}

void mwg_farfield_config_init(mwg_farfield_config* c) {
  if (c) *c = {10.0, 1e-3, 240, 64, 4096};
}

void mwg_rabi_config_init(mwg_rabi_config* c) {
  if (c) *c = {0.0, 0.0, 1.0, 512};
}

mwg_status mwg_derive_grating(const mwg_beam* beam, mwg_grating* out) {
  return guarded([&] {
    require(out, "output");
    auto g = mwg::derive_grating(to_beam(beam));
    *out = {g.phi0, g.n0, g.eta_p, g.eta_a};
  });
}

mwg_status mwg_derive_scales(const mwg_beam* beam, double separation, mwg_scales* out) {
  return guarded([&] {
    require(out, "output");
    auto s = mwg::derive_scales(to_beam(beam), separation);
    *out = {s.talbot_length, s.de_broglie, s.separation, s.talbot_parameter, s.interaction_time};
  });
}

mwg_status mwg_alpha_si_from_angstrom3(double alpha_a3, double* out) {
  return guarded([&] {
    require(out, "output");
    *out = mwg::alpha_si_from_angstrom3(alpha_a3);
  });
}

mwg_status mwg_measurement_operator(const mwg_grating* g, int ell, double x, double* out) {
  return guarded([&] {
    require(out, "output");
    if (ell < 0) throw mwg::InvalidInput("absorption number must be >= 0");
    auto m = mwg::m_ell(x, {to_grating(g), ell});
    out[0] = m.real();
    out[1] = m.imag();
  });
}

mwg_status mwg_ladder_cutoff(const mwg_grating* g, int* out) {
  return guarded([&] {
    require(out, "output");
    *out = mwg::ladder_cutoff(to_grating(g));
  });
}

mwg_status mwg_transmission_closed_form(int ell, double n0, double open_fraction, double* out) {
  return guarded([&] {
    require(out, "output");
    *out = mwg::transmission_closed_form(ell, n0, open_fraction);
  });
}

mwg_status mwg_source_closed_form(const mwg_grating* g, mwg_variant variant, mwg_source** out) {
  return guarded([&] {
    require(out, "output");
    *out = nullptr;
    if (variant != MWG_QUANTUM && variant != MWG_CLASSICAL) throw mwg::InvalidInput("unknown variant");
    auto grating = to_grating(g);
    auto v = variant == MWG_CLASSICAL ? mwg::Variant::classical : mwg::Variant::quantum;
    auto s = std::make_unique<mwg_source>();
    s->impl = std::make_shared<mwg::ClosedFormSource>(grating, v);
    if (variant == MWG_QUANTUM) s->quantum_grating = grating;
    s->name = s->impl->name();
    *out = s.release();
  });
}

mwg_status mwg_source_ladder(const mwg_grating* g, mwg_envelope envelope, mwg_ladder_method method, int jobs,
                             mwg_source** out) {
  return guarded([&] {
    require(out, "output");
    *out = nullptr;
    auto cfg = to_ladder(g, envelope, jobs);
    auto s = std::make_unique<mwg_source>();
    s->impl = std::make_shared<mwg::KernelSource>(mwg::ladder_kernel(cfg, to_method(method)));
    s->name = s->impl->name();
    *out = s.release();
  });
}

mwg_status mwg_source_rabi(const mwg_rabi_config* cfg, mwg_rabi_method method, int jobs, mwg_source** out) {
  return guarded([&] {
    require(out, "output");
    *out = nullptr;
    auto c = to_rabi(cfg);
    c.jobs = jobs;
    auto k = mwg::rabi_solve(c, to_method(method));
    auto s = std::make_unique<mwg_source>();
    s->impl = std::make_shared<mwg::KernelSource>(k.ground);
    s->name = s->impl->name();
    *out = s.release();
  });
}

void mwg_source_free(mwg_source* src) { delete src; }

mwg_status mwg_source_max_ell(const mwg_source* src, int* out) {
  return guarded([&] {
    require(src, "source");
    require(out, "output");
    *out = src->impl->max_ell();
  });
}

const char* mwg_source_name(const mwg_source* src) { return src ? src->name.c_str() : ""; }

mwg_status mwg_talbot_row(const mwg_source* src, double xi, int ell, int jmax, double* out) {
  return guarded([&] {
    require(src, "source");
    require(out, "output");
    if (jmax < 0) throw mwg::InvalidInput("jmax must be >= 0");
    auto row = src->impl->row(xi, to_channel(ell), jmax);
    for (int j = -jmax; j <= jmax; ++j) {
      out[2 * (j + jmax)] = row(j).real();
      out[2 * (j + jmax) + 1] = row(j).imag();
    }
  });
}

mwg_status mwg_mean_transmission(const mwg_source* src, int ell, double open_fraction, double* out) {
  return guarded([&] {
    require(src, "source");
    require(out, "output");
    *out = mwg::mean_transmission(*src->impl, to_channel(ell), open_fraction);
  });
}

mwg_status mwg_kdtli_signal(const mwg_source* src, const mwg_kdtli_config* cfg, int ell, mwg_signal** out) {
  return guarded([&] {
    require(out, "output");
    *out = nullptr;
    auto s = std::make_unique<mwg_signal>();
    s->impl = mwg::kdtli_signal(to_kdtli(src, cfg, ell));
    for (auto c : s->impl.components) {
      s->components.push_back(c.real());
      s->components.push_back(c.imag());
    }
    *out = s.release();
  });
}

mwg_status mwg_kdtli_visibility(const mwg_source* src, const mwg_kdtli_config* cfg, int ell, double* out) {
  return guarded([&] {
    require(out, "output");
    *out = mwg::sinusoidal_visibility(to_kdtli(src, cfg, ell));
  });
}

void mwg_signal_free(mwg_signal* s) { delete s; }
size_t mwg_signal_length(const mwg_signal* s) { return s ? s->impl.values.size() : 0; }
const double* mwg_signal_shifts(const mwg_signal* s) { return s ? s->impl.shifts.data() : nullptr; }
const double* mwg_signal_values(const mwg_signal* s) { return s ? s->impl.values.data() : nullptr; }
size_t mwg_signal_component_count(const mwg_signal* s) { return s ? s->impl.components.size() : 0; }
const double* mwg_signal_components(const mwg_signal* s) { return s ? s->components.data() : nullptr; }
double mwg_signal_mean(const mwg_signal* s) { return s ? s->impl.mean : 0.0; }

mwg_status mwg_signal_visibility_minmax(const mwg_signal* s, double* out) {
  return guarded([&] {
    require(s, "signal");
    require(out, "output");
    *out = mwg::visibility_minmax(s->impl);
  });
}

mwg_status mwg_farfield_density(const mwg_source* src, const mwg_farfield_config* cfg, const double* screen,
                                size_t n, int ell, mwg_farfield_model model, mwg_density** out) {
  return guarded([&] {
    require(out, "output");
    *out = nullptr;
    require(src, "source");
    require(cfg, "far-field config");
    if (n > 0) require(screen, "screen");
    mwg::FarFieldConfig c;
    c.slit_ratio = cfg->slit_ratio;
    c.period_ratio = cfg->period_ratio;
    c.q_nodes_per_unit = cfg->q_nodes_per_unit;
    c.jmax = cfg->jmax;
    c.screen.assign(screen, screen + n);
    auto ch = to_channel(ell);
    auto d = std::make_unique<mwg_density>();
    switch (model) {
      case MWG_FARFIELD_FOURIER: d->impl = mwg::farfield_density(c, *src->impl, ch); break;
      case MWG_FARFIELD_FRAUNHOFER: d->impl = mwg::fraunhofer_density(c, *src->impl, ch); break;
      case MWG_FARFIELD_KIRCHHOFF:
      case MWG_FARFIELD_PHASE_SPACE:
        if (!src->quantum_grating)
          throw mwg::InvalidInput("Kirchhoff and phase-space models need a closed-form quantum source");
        d->impl = model == MWG_FARFIELD_KIRCHHOFF
                      ? mwg::farfield_kirchhoff(c, *src->quantum_grating, ch, cfg->kirchhoff_nodes)
                      : mwg::farfield_phase_space(c, *src->quantum_grating, ch);
        break;
      default: throw mwg::InvalidInput("unknown far-field model");
    }
    *out = d.release();
  });
}

mwg_status mwg_density_smooth(const mwg_density* in, double sigma, mwg_resolution_kernel kernel,
                              mwg_density** out) {
  return guarded([&] {
    require(out, "output");
    *out = nullptr;
    require(in, "density");
    if (kernel != MWG_KERNEL_GAUSSIAN && kernel != MWG_KERNEL_BOXCAR)
      throw mwg::InvalidInput("unknown resolution kernel");
    auto kind = kernel == MWG_KERNEL_BOXCAR ? mwg::ResolutionKernel::boxcar : mwg::ResolutionKernel::gaussian;
    auto d = std::make_unique<mwg_density>();
    d->impl = mwg::apply_detector_resolution(in->impl, sigma, kind);
    *out = d.release();
  });
}

void mwg_density_free(mwg_density* d) { delete d; }
size_t mwg_density_length(const mwg_density* d) { return d ? d->impl.values.size() : 0; }
const double* mwg_density_screen(const mwg_density* d) { return d ? d->impl.screen.data() : nullptr; }
const double* mwg_density_values(const mwg_density* d) { return d ? d->impl.values.data() : nullptr; }
const char* mwg_density_warning(const mwg_density* d) { return d ? d->impl.warning.c_str() : ""; }

mwg_status mwg_ladder_pair(const mwg_grating* g, mwg_envelope envelope, mwg_ladder_method method, double x,
                           double xp, size_t n, double* out) {
  return guarded([&] {
    require(out, "output");
    auto cfg = to_ladder(g, envelope, 1);
    std::size_t need = static_cast<std::size_t>(mwg::resolved_max_ell(cfg)) + 1;
    if (n != need) throw mwg::InvalidInput("ladder pair: output length must be " + std::to_string(need));
    std::vector<mwg::cplx> k(need);
    switch (to_method(method)) {
      case mwg::LadderMethod::ode: mwg::ladder_ode_pair(cfg, x, xp, k); break;
      case mwg::LadderMethod::analytic: mwg::ladder_analytic_pair(cfg, x, xp, k); break;
      case mwg::LadderMethod::t1_integral: mwg::ladder_t1_pair(cfg, x, xp, k); break;
    }
    for (std::size_t l = 0; l < need; ++l) {
      out[2 * l] = k[l].real();
      out[2 * l + 1] = k[l].imag();
    }
  });
}

mwg_status mwg_rabi_pair(const mwg_rabi_config* cfg, mwg_rabi_method method, double x, double xp, double* out) {
  return guarded([&] {
    require(out, "output");
    auto c = to_rabi(cfg);
    auto rho = to_method(method) == mwg::RabiMethod::ode ? mwg::rabi_pair_ode(c, x, xp)
                                                         : mwg::rabi_pair_exact(c, x, xp);
    for (int i = 0; i < 9; ++i) {
      out[2 * i] = rho[i].real();
      out[2 * i + 1] = rho[i].imag();
    }
  });
}

mwg_status mwg_rabi_populations(const mwg_rabi_config* cfg, mwg_rabi_method method, size_t n, double* x,
                                double* p0, double* p1, double* p2) {
  return guarded([&] {
    auto c = to_rabi(cfg);
    if (n != static_cast<std::size_t>(c.grid)) throw mwg::InvalidInput("population arrays must have grid entries");
    auto k = mwg::rabi_solve(c, to_method(method));
    auto copy = [n](const std::vector<double>& v, double* dst) {
      if (dst) std::memcpy(dst, v.data(), n * sizeof(double));
    };
    copy(k.x, x);
    copy(k.p0, p0);
    copy(k.p1, p1);
    copy(k.p2, p2);
  });
}

mwg_status mwg_rabi_short_lifetime(const mwg_rabi_config* cfg, int enforce, mwg_grating* out) {
  return guarded([&] {
    require(out, "output");
    auto c = to_rabi(cfg);
    mwg::GratingParameters g;
    if (enforce) {
      mwg::rabi_short_lifetime_limit(c);
    }
    g = mwg::short_lifetime_parameters(c);
    *out = {g.phi0, g.n0, g.eta_p, g.eta_a};
  });
}

}  // extern "C"
