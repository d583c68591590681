#include "config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "errors.hpp"
#include "table.hpp"

namespace mwgcli {

namespace {

constexpr double amu_kg = 1.66053906660e-27;

const char* beam_keys[] = {"beam.power_w",        "beam.waist_y_um",    "beam.waist_z_um",
                           "beam.wavelength_nm",  "beam.alpha_a3",      "beam.sigma_abs_m2",
                           "beam.velocity_m_per_s", "beam.mass_amu"};

double to_number(const std::string& key, const std::string& s) {
  double v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
    throw CliError(exit_config, key + ": '" + s + "' is not a finite number");
  return v;
}

Config from_tree(const boost::property_tree::ptree& tree) {
  Config c;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw CliError(exit_config, "key '" + section + "' must be inside a [section]");
    for (const auto& [key, value] : body) c.set(section + "." + key, value.data());
  }
  return c;
}

}  // namespace

const std::vector<KeySpec>& key_registry() {
  static const std::vector<KeySpec> keys = {
      {"beam.power_w", KeyKind::number, "", "laser power [W]"},
      {"beam.waist_y_um", KeyKind::number, "", "waist along the grating wave vector [um]"},
      {"beam.waist_z_um", KeyKind::number, "", "waist along the molecular beam [um]"},
      {"beam.wavelength_nm", KeyKind::number, "", "laser wavelength [nm]"},
      {"beam.alpha_a3", KeyKind::number, "", "polarizability volume alpha/(4 pi eps0) [A^3]"},
      {"beam.sigma_abs_m2", KeyKind::number, "", "absorption cross section [m^2]"},
      {"beam.velocity_m_per_s", KeyKind::number, "", "forward velocity [m/s]"},
      {"beam.mass_amu", KeyKind::number, "", "particle mass [amu]"},
      {"interferometer.separation_m", KeyKind::number, "", "grating separation L [m]"},
      {"grating.phi0_rad", KeyKind::number, "3.141592653589793", "peak eikonal phase [rad]"},
      {"grating.n0", KeyKind::number, "1", "mean absorbed photons at the antinode"},
      {"grating.eta_p", KeyKind::number, "1", "excited/ground polarizability ratio"},
      {"grating.eta_a", KeyKind::number, "1", "excited/ground absorption ratio"},
      {"talbot.xi_min", KeyKind::number, "0", "first Talbot argument"},
      {"talbot.xi_max", KeyKind::number, "2", "last Talbot argument"},
      {"talbot.xi_points", KeyKind::integer, "201", "Talbot arguments"},
      {"talbot.jmax", KeyKind::integer, "16", "largest |j| written"},
      {"kdtli.open_fraction", KeyKind::number, "0.42", "mask open fraction f"},
      {"kdtli.talbot_ratio", KeyKind::number, "1", "L / L_T"},
      {"kdtli.shifts", KeyKind::integer, "256", "mask shifts per period"},
      {"kdtli.velocity_spread", KeyKind::number, "0", "rms dv/v"},
      {"kdtli.jmax_cap", KeyKind::integer, "64", "largest signal harmonic"},
      {"farfield.slit_ratio", KeyKind::number, "10", "collimation slit D / d"},
      {"farfield.period_ratio", KeyKind::number, "0.001", "d / dx"},
      {"farfield.screen_half_width_dx", KeyKind::number, "3", "screen half width [dx]"},
      {"farfield.screen_points", KeyKind::integer, "601", "screen samples"},
      {"farfield.sigma_det_dx", KeyKind::number, "0.1", "detector resolution [dx], 0 = none"},
      {"farfield.kernel", KeyKind::text, "gaussian", "gaussian | boxcar"},
      {"farfield.model", KeyKind::text, "fourier", "fourier | fraunhofer | kirchhoff | phase_space"},
      {"farfield.normalization", KeyKind::text, "density", "density | peak"},
      {"farfield.q_nodes_per_unit", KeyKind::integer, "240", "quadrature nodes per unit q"},
      {"farfield.jmax", KeyKind::integer, "64", "Talbot coefficient cutoff"},
      {"ladder.envelope", KeyKind::text, "constant", "constant | gaussian"},
      {"ladder.method", KeyKind::text, "analytic", "ode | analytic | t1"},
      {"ladder.x_points", KeyKind::integer, "101", "positions of the diagonal dump"},
      {"rabi.pulse_area_rad", KeyKind::number, "12.566370614359172", "Omega_0 t_L [rad]"},
      {"rabi.detuning_tl", KeyKind::number, "0", "Delta t_L"},
      {"rabi.lifetime_tl", KeyKind::number, "1", "tau / t_L"},
      {"rabi.method", KeyKind::text, "exact", "exact | ode"},
  };
  return keys;
}

const KeySpec* find_key(const std::string& name) {
  for (const auto& k : key_registry())
    if (name == k.name) return &k;
  return nullptr;
}

SweepAxis parse_sweep(const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos) throw CliError(exit_config, "sweep '" + spec + "': expected key=start:stop:count");
  SweepAxis axis;
  axis.key = spec.substr(0, eq);
  const KeySpec* k = find_key(axis.key);
  if (!k) throw CliError(exit_config, "sweep: unknown parameter '" + axis.key + "'");
  if (k->kind != KeyKind::number) throw CliError(exit_config, "sweep: '" + axis.key + "' is not a real parameter");
  std::string range = spec.substr(eq + 1);
  auto c1 = range.find(':');
  auto c2 = c1 == std::string::npos ? c1 : range.find(':', c1 + 1);
  if (c2 == std::string::npos) throw CliError(exit_config, "sweep '" + spec + "': expected key=start:stop:count");
  double a = to_number(axis.key, range.substr(0, c1));
  double b = to_number(axis.key, range.substr(c1 + 1, c2 - c1 - 1));
  std::string count_text = range.substr(c2 + 1);
  int n = 0;
  auto r = std::from_chars(count_text.data(), count_text.data() + count_text.size(), n);
  if (r.ec != std::errc() || r.ptr != count_text.data() + count_text.size() || n < 1)
    throw CliError(exit_config, "sweep '" + spec + "': count must be an integer >= 1");
  for (int i = 0; i < n; ++i) axis.values.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return axis;
}

Config Config::from_file(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    if (e.line() == 0) throw CliError(exit_io, "cannot read config " + path + ": " + e.message());
    throw CliError(exit_config, "config " + path + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  return from_tree(tree);
}

Config Config::from_string(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw CliError(exit_config, "config line " + std::to_string(e.line()) + ": " + e.message());
  }
  return from_tree(tree);
}

void Config::set(const std::string& key, const std::string& value) {
  const KeySpec* k = find_key(key);
  if (!k) throw CliError(exit_config, "unknown configuration key '" + key + "'");
  if (k->kind == KeyKind::number) to_number(key, value);
  if (k->kind == KeyKind::integer) {
    int v = 0;
    auto r = std::from_chars(value.data(), value.data() + value.size(), v);
    if (r.ec != std::errc() || r.ptr != value.data() + value.size())
      throw CliError(exit_config, key + ": '" + value + "' is not an integer");
  }
  values_[key] = value;
}

void Config::set_number(const std::string& key, double value) { set(key, format_number(value)); }

bool Config::is_set(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::raw(const std::string& key) const {
  auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  const KeySpec* k = find_key(key);
  if (!k) throw std::logic_error("unregistered key " + key);
  if (!*k->fallback) throw CliError(exit_config, "missing required key '" + key + "'");
  return k->fallback;
}

double Config::number(const std::string& key) const { return to_number(key, raw(key)); }

int Config::integer(const std::string& key) const {
  std::string s = raw(key);
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::string Config::text(const std::string& key) const { return raw(key); }

std::vector<std::pair<std::string, std::string>> Config::effective(const std::vector<std::string>& sections) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : key_registry()) {
    std::string name = k.name;
    std::string section = name.substr(0, name.find('.'));
    bool wanted = false;
    for (const auto& s : sections) wanted = wanted || s == section;
    if (!wanted) continue;
    bool derived = (has_beam() && (name == "grating.phi0_rad" || name == "grating.n0")) ||
                   (is_set("interferometer.separation_m") && name == "kdtli.talbot_ratio");
    if (derived)
      out.emplace_back(name, "derived");
    else if (is_set(name) || *k.fallback)
      out.emplace_back(name, raw(name));
  }
  return out;
}

bool Config::has_beam() const {
  int n = 0;
  for (const char* k : beam_keys) n += is_set(k);
  if (n != 0 && n != static_cast<int>(std::size(beam_keys)))
    throw CliError(exit_config, "[beam] needs all of power_w, waist_y_um, waist_z_um, wavelength_nm, "
                                "alpha_a3, sigma_abs_m2, velocity_m_per_s, mass_amu");
  return n != 0;
}

mwg_beam Config::beam() const {
  if (!has_beam()) throw CliError(exit_config, "this command needs a [beam] section");
  mwg_beam b;
  b.power = number("beam.power_w");
  b.waist_y = number("beam.waist_y_um") * 1e-6;
  b.waist_z = number("beam.waist_z_um") * 1e-6;
  b.wavelength = number("beam.wavelength_nm") * 1e-9;
  check(mwg_alpha_si_from_angstrom3(number("beam.alpha_a3"), &b.alpha_si));
  b.sigma_abs = number("beam.sigma_abs_m2");
  b.velocity = number("beam.velocity_m_per_s");
  b.mass = number("beam.mass_amu") * amu_kg;
  return b;
}

mwg_grating Config::grating() const {
  mwg_grating g;
  mwg_grating_init(&g);
  if (has_beam()) {
    if (is_set("grating.phi0_rad") || is_set("grating.n0"))
      throw CliError(exit_config, "grating.phi0_rad and grating.n0 are derived from [beam]; remove one of them");
    mwg_beam b = beam();
    check(mwg_derive_grating(&b, &g));
  } else {
    g.phi0 = number("grating.phi0_rad");
    g.n0 = number("grating.n0");
  }
  g.eta_p = number("grating.eta_p");
  g.eta_a = number("grating.eta_a");
  return g;
}

double Config::talbot_ratio() const {
  if (is_set("interferometer.separation_m")) {
    if (is_set("kdtli.talbot_ratio"))
      throw CliError(exit_config, "kdtli.talbot_ratio is derived from interferometer.separation_m; remove one of them");
    mwg_beam b = beam();
    mwg_scales s;
    check(mwg_derive_scales(&b, number("interferometer.separation_m"), &s));
    return s.talbot_parameter;
  }
  return number("kdtli.talbot_ratio");
}

}  // namespace mwgcli
