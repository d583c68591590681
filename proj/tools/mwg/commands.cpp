#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "api.hpp"
#include "errors.hpp"
#include "figures.hpp"

namespace mwgcli {

namespace {

using Point = std::vector<Table>;

mwg_variant parse_variant(const std::string& v) {
  if (v == "quantum") return MWG_QUANTUM;
  if (v == "classical") return MWG_CLASSICAL;
  throw CliError(exit_config, "--variant must be quantum or classical");
}

// Channel list for --ell; `all` expands to every absorption number and the sum.
std::vector<int> parse_channels(const std::string& spec, const std::string& fallback, int max_ell) {
  std::string s = spec.empty() ? fallback : spec;
  if (s == "sum") return {MWG_SUM};
  if (s == "all") {
    std::vector<int> out;
    for (int l = 0; l <= max_ell; ++l) out.push_back(l);
    out.push_back(MWG_SUM);
    return out;
  }
  std::size_t pos = 0;
  int ell = -1;
  try {
    ell = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || ell < 0) throw CliError(exit_config, "--ell must be N, all or sum");
  if (ell > max_ell)
    throw CliError(exit_config, "--ell " + s + " exceeds the largest absorption number " + std::to_string(max_ell));
  return {ell};
}

mwg_envelope parse_envelope(const std::string& s) {
  if (s == "constant") return MWG_ENVELOPE_CONSTANT;
  if (s == "gaussian") return MWG_ENVELOPE_GAUSSIAN;
  throw CliError(exit_config, "ladder.envelope must be constant or gaussian");
}

mwg_ladder_method parse_ladder_method(const std::string& s) {
  if (s == "ode") return MWG_LADDER_ODE;
  if (s == "analytic") return MWG_LADDER_ANALYTIC;
  if (s == "t1") return MWG_LADDER_T1;
  throw CliError(exit_config, "ladder.method must be ode, analytic or t1");
}

mwg_rabi_method parse_rabi_method(const std::string& s) {
  if (s == "exact") return MWG_RABI_EXACT;
  if (s == "ode") return MWG_RABI_ODE;
  throw CliError(exit_config, "rabi.method must be exact or ode");
}

mwg_farfield_model parse_model(const std::string& s) {
  if (s == "fourier") return MWG_FARFIELD_FOURIER;
  if (s == "fraunhofer") return MWG_FARFIELD_FRAUNHOFER;
  if (s == "kirchhoff") return MWG_FARFIELD_KIRCHHOFF;
  if (s == "phase_space") return MWG_FARFIELD_PHASE_SPACE;
  throw CliError(exit_config, "farfield.model must be fourier, fraunhofer, kirchhoff or phase_space");
}

mwg_resolution_kernel parse_kernel(const std::string& s) {
  if (s == "gaussian") return MWG_KERNEL_GAUSSIAN;
  if (s == "boxcar") return MWG_KERNEL_BOXCAR;
  throw CliError(exit_config, "farfield.kernel must be gaussian or boxcar");
}

mwg_kdtli_config kdtli_config(const Config& c) {
  mwg_kdtli_config k;
  mwg_kdtli_config_init(&k);
  k.open_fraction = c.number("kdtli.open_fraction");
  k.talbot = c.talbot_ratio();
  k.velocity_spread = c.number("kdtli.velocity_spread");
  k.jmax_cap = c.integer("kdtli.jmax_cap");
  k.shifts = c.integer("kdtli.shifts");
  return k;
}

mwg_rabi_config rabi_config(const Config& c) {
  mwg_rabi_config r;
  mwg_rabi_config_init(&r);
  r.pulse_area = c.number("rabi.pulse_area_rad");
  r.detuning = c.number("rabi.detuning_tl");
  r.lifetime = c.number("rabi.lifetime_tl");
  return r;
}

Table make_table(const std::string& name, std::vector<std::string> columns) {
  Table t;
  t.name = name;
  t.columns = std::move(columns);
  return t;
}

Point derive_params(const Config& c) {
  mwg_beam b = c.beam();
  mwg_grating g;
  check(mwg_derive_grating(&b, &g));
  mwg_scales s;
  check(mwg_derive_scales(&b, c.number("interferometer.separation_m"), &s));
  Table t = make_table("parameters", {"phi0_rad", "n0", "talbot_length_m", "de_broglie_m", "separation_m",
                                      "talbot_ratio", "interaction_time_s"});
  t.add_row({g.phi0, g.n0, s.talbot_length, s.de_broglie, s.separation, s.talbot_parameter, s.interaction_time});
  return {t};
}

Point talbot(const Config& c, const RunOptions& o) {
  Source src = closed_form_source(c.grating(), parse_variant(o.variant));
  auto channels = parse_channels(o.ell, "sum", max_ell(src));
  int jmax = c.integer("talbot.jmax");
  int n = c.integer("talbot.xi_points");
  if (n < 1 || jmax < 0) throw CliError(exit_config, "talbot.xi_points must be >= 1 and talbot.jmax >= 0");
  double a = c.number("talbot.xi_min"), b = c.number("talbot.xi_max");
  Table t = make_table("talbot", {"channel", "xi", "j", "re", "im"});
  t.metadata = {{"model", mwg_source_name(src.get())}};
  std::vector<double> row(2 * (2 * jmax + 1));
  for (int ell : channels)
    for (int i = 0; i < n; ++i) {
      double xi = n == 1 ? a : a + (b - a) * i / (n - 1);
      check(mwg_talbot_row(src.get(), xi, ell, jmax, row.data()));
      for (int j = -jmax; j <= jmax; ++j)
        t.add_row({channel_label(ell), xi, static_cast<long long>(j), row[2 * (j + jmax)], row[2 * (j + jmax) + 1]});
    }
  return {t};
}

// Signal, harmonic and visibility tables for one source over the given channels.
Point fringe_tables(const Source& src, const mwg_kdtli_config& k, const std::vector<int>& channels,
                    const std::string& prefix) {
  Table sig = make_table(prefix + "_signal", {"channel", "x_s", "signal"});
  Table harm = make_table(prefix + "_harmonics", {"channel", "j", "s_re", "s_im", "abs_ratio"});
  Table vis = make_table(prefix + "_visibility", {"channel", "talbot_ratio", "v_sin", "v_minmax", "mean"});
  std::string model = mwg_source_name(src.get());
  sig.metadata = {{"model", model}, {"normalization", "probability per shift, mean f^2 B_0(0)"}};
  harm.metadata = {{"model", model}, {"normalization", "S(x_s) = S_0 + 2 Re sum_j S_j e^{2 pi i j x_s}"}};
  vis.metadata = {{"model", model}};
  for (int ell : channels) {
    Signal s = kdtli_signal(src, k, ell);
    const double* x = mwg_signal_shifts(s.get());
    const double* y = mwg_signal_values(s.get());
    for (std::size_t i = 0; i < mwg_signal_length(s.get()); ++i) sig.add_row({channel_label(ell), x[i], y[i]});
    const double* comp = mwg_signal_components(s.get());
    double s0 = comp[0];
    for (std::size_t j = 0; j < mwg_signal_component_count(s.get()); ++j)
      harm.add_row({channel_label(ell), static_cast<long long>(j), comp[2 * j], comp[2 * j + 1],
                    s0 > 0 ? std::hypot(comp[2 * j], comp[2 * j + 1]) / s0 : std::nan("")});
    double vmm = mwg_signal_length(s.get()) >= 256 ? minmax_visibility(s) : std::nan("");
    double v = s0 > 0 ? kdtli_visibility(src, k, ell) : std::nan("");
    vis.add_row({channel_label(ell), k.talbot, v, vmm, mwg_signal_mean(s.get())});
  }
  return {sig, harm, vis};
}

Point kdtli(const Config& c, const RunOptions& o) {
  Source src = closed_form_source(c.grating(), parse_variant(o.variant));
  return fringe_tables(src, kdtli_config(c), parse_channels(o.ell, "sum", max_ell(src)), "kdtli");
}

Point farfield_cmd(const Config& c, const RunOptions& o) {
  mwg_grating g = c.grating();
  Source src = closed_form_source(g, parse_variant(o.variant));
  auto channels = parse_channels(o.ell, "sum", max_ell(src));
  mwg_farfield_config f;
  mwg_farfield_config_init(&f);
  f.slit_ratio = c.number("farfield.slit_ratio");
  f.period_ratio = c.number("farfield.period_ratio");
  f.q_nodes_per_unit = c.integer("farfield.q_nodes_per_unit");
  f.jmax = c.integer("farfield.jmax");
  auto model = parse_model(c.text("farfield.model"));
  auto kernel = parse_kernel(c.text("farfield.kernel"));
  double sigma = c.number("farfield.sigma_det_dx");
  int n = c.integer("farfield.screen_points");
  double w = c.number("farfield.screen_half_width_dx");
  if (n < 2 || !(w > 0)) throw CliError(exit_config, "farfield screen needs >= 2 points and a positive width");
  std::vector<double> screen(n);
  for (int i = 0; i < n; ++i) screen[i] = -w + 2 * w * i / (n - 1);

  std::string norm = c.text("farfield.normalization");
  if (norm != "density" && norm != "peak") throw CliError(exit_config, "farfield.normalization must be density or peak");
  Table t = make_table("farfield", {"channel", "x_dx", "density", "smoothed"});
  t.metadata = {{"model", std::string(mwg_source_name(src.get())) + "/" + c.text("farfield.model")},
                {"normalization", norm == "peak" ? "each column scaled to peak 1 per channel"
                                                 : "probability per unit x/dx"},
                {"resolution", c.text("farfield.kernel") + " sigma=" + format_number(sigma)}};
  for (int ell : channels) {
    Density d = farfield(src, f, screen, ell, model);
    Density s = sigma > 0 ? smooth(d, sigma, kernel) : nullptr;
    std::string warning = mwg_density_warning(d.get());
    if (!warning.empty()) t.metadata.emplace_back("warning", warning);
    const double* v = mwg_density_values(d.get());
    const double* sv = s ? mwg_density_values(s.get()) : v;
    double pv = 1, ps = 1;
    if (norm == "peak") {
      pv = *std::max_element(v, v + n);
      ps = *std::max_element(sv, sv + n);
      if (!(pv > 0 && ps > 0)) throw CliError(exit_regime, "peak normalization of a vanishing density");
    }
    for (int i = 0; i < n; ++i) t.add_row({channel_label(ell), screen[i], v[i] / pv, sv[i] / ps});
  }
  return {t};
}

Point ladder_cmd(const Config& c, const RunOptions& o, int jobs) {
  if (o.variant != "quantum") throw CliError(exit_config, "ladder kernels exist for the quantum model only");
  mwg_grating g = c.grating();
  auto env = parse_envelope(c.text("ladder.envelope"));
  auto method = parse_ladder_method(c.text("ladder.method"));
  Source src = ladder_source(g, env, method, jobs);
  int lmax = max_ell(src);
  auto channels = parse_channels(o.ell, "all", lmax);
  int n = c.integer("ladder.x_points");
  if (n < 1) throw CliError(exit_config, "ladder.x_points must be >= 1");

  Table diag = make_table("ladder_diagonal", {"ell", "x", "population"});
  diag.metadata = {{"model", mwg_source_name(src.get())}, {"normalization", "K_ell(x, x), sums to 1 over ell"}};
  std::vector<double> k(2 * (lmax + 1));
  for (int i = 0; i < n; ++i) {
    double x = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    check(mwg_ladder_pair(&g, env, method, x, x, lmax + 1, k.data()));
    for (int l = 0; l <= lmax; ++l) {
      bool wanted = false;
      for (int ch : channels) wanted = wanted || ch == l || ch == MWG_SUM;
      if (wanted) diag.add_row({static_cast<long long>(l), x, k[2 * l]});
    }
  }
  mwg_kdtli_config kc = kdtli_config(c);
  Table vis = make_table("ladder_visibility", {"channel", "talbot_ratio", "v_sin", "mean"});
  vis.metadata = {{"model", mwg_source_name(src.get())}};
  for (int ell : channels) {
    double mean = 0;
    check(mwg_mean_transmission(src.get(), ell, kc.open_fraction, &mean));
    vis.add_row({channel_label(ell), kc.talbot, mean > 0 ? kdtli_visibility(src, kc, ell) : std::nan(""), mean});
  }
  return {diag, vis};
}

Point rabi_cmd(const Config& c, const RunOptions& o, int jobs) {
  if (o.variant != "quantum") throw CliError(exit_config, "the Rabi model exists for the quantum model only");
  if (!o.ell.empty() && o.ell != "0")
    throw CliError(exit_config, "the Rabi interferogram has the ground-state channel only (--ell 0)");
  mwg_rabi_config r = rabi_config(c);
  auto method = parse_rabi_method(c.text("rabi.method"));
  std::vector<double> x(r.grid), p0(r.grid), p1(r.grid), p2(r.grid);
  check(mwg_rabi_populations(&r, method, r.grid, x.data(), p0.data(), p1.data(), p2.data()));
  mwg_grating mapped;
  check(mwg_rabi_short_lifetime(&r, 0, &mapped));

  Table pop = make_table("rabi_populations", {"x", "p0", "p1", "p2"});
  pop.metadata = {{"model", method == MWG_RABI_EXACT ? "rabi-exact" : "rabi-ode"},
                  {"short_lifetime_phi0", format_number(mapped.phi0)},
                  {"short_lifetime_n0", format_number(mapped.n0)}};
  for (int i = 0; i < r.grid; ++i) pop.add_row({x[i], p0[i], p1[i], p2[i]});

  Source src = rabi_source(r, method, jobs);
  Point out = fringe_tables(src, kdtli_config(c), {0}, "rabi");
  out.insert(out.begin(), pop);
  return out;
}

Point run_point(const RunOptions& o, const Config& c, int jobs) {
  if (o.command == "derive-params") return derive_params(c);
  if (o.command == "talbot") return talbot(c, o);
  if (o.command == "kdtli") return kdtli(c, o);
  if (o.command == "farfield") return farfield_cmd(c, o);
  if (o.command == "ladder") return ladder_cmd(c, o, jobs);
  if (o.command == "rabi") return rabi_cmd(c, o, jobs);
  throw CliError(exit_config, "unknown command '" + o.command + "'");
}

std::vector<std::string> sections_for(const std::string& command) {
  if (command == "derive-params") return {"beam", "interferometer"};
  if (command == "talbot") return {"beam", "grating", "talbot"};
  if (command == "kdtli") return {"beam", "interferometer", "grating", "kdtli"};
  if (command == "farfield") return {"beam", "grating", "farfield"};
  if (command == "ladder") return {"beam", "interferometer", "grating", "ladder", "kdtli"};
  if (command == "rabi") return {"rabi", "kdtli"};
  return {};
}

int resolved_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Cartesian product of the sweep axes, first axis outermost.
std::vector<std::vector<double>> sweep_points(const std::vector<SweepAxis>& axes) {
  std::vector<std::vector<double>> pts = {{}};
  for (const auto& a : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& p : pts)
      for (double v : a.values) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  return pts;
}

// Runs fn(i) for i < n on a pool; the exception of the lowest failing index is rethrown.
template <class Fn>
void pool(std::size_t n, int workers, Fn fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (int t = 1; t < std::min<int>(workers, static_cast<int>(n)); ++t) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<std::pair<std::string, std::string>> common_metadata(const RunOptions& o) {
  std::vector<std::pair<std::string, std::string>> m = {{"generator", std::string("mwg ") + mwg_version()},
                                                        {"command", o.command == "figure" ? "figure " + o.figure
                                                                                          : o.command}};
  if (o.command != "figure" && o.command != "derive-params") m.emplace_back("variant", o.variant);
  if (!o.ell.empty()) m.emplace_back("channels", o.ell);
  return m;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError(exit_io, "cannot write " + path.string());
  out << contents;
  if (!out) throw CliError(exit_io, "write failed: " + path.string());
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"derive-params", "talbot", "kdtli", "farfield",
                                                 "ladder",        "rabi",   "figure"};
  return names;
}

RunResult execute(const RunOptions& o, const Config& config) {
  if (o.format != "csv" && o.format != "json") throw CliError(exit_config, "--format must be csv or json");
  parse_variant(o.variant);
  int jobs = resolved_jobs(o.jobs);
  RunResult result;

  if (o.command == "figure") {
    if (!o.sweeps.empty()) throw CliError(exit_config, "figure commands run fixed parameter sets; drop --sweep");
    result = run_figure(o.figure, jobs, o.format);
  } else {
    for (const auto& s : o.sweeps) result.sweeps.push_back(parse_sweep(s));
    auto sections = sections_for(o.command);
    for (const auto& a : result.sweeps) {
      std::string section = a.key.substr(0, a.key.find('.'));
      bool used = false;
      for (const auto& s : sections) used = used || s == section;
      if (!used) throw CliError(exit_config, "sweep key '" + a.key + "' is not used by " + o.command);
    }
    auto points = sweep_points(result.sweeps);
    std::vector<Point> out(points.size());
    int inner = points.size() > 1 ? 1 : jobs;
    pool(points.size(), points.size() > 1 ? jobs : 1, [&](std::size_t i) {
      Config c = config;
      for (std::size_t a = 0; a < result.sweeps.size(); ++a) c.set_number(result.sweeps[a].key, points[i][a]);
      out[i] = run_point(o, c, inner);
    });

    // Merge points in input order; swept values become leading columns.
    std::map<std::string, std::size_t> index;
    for (std::size_t p = 0; p < out.size(); ++p)
      for (const auto& t : out[p]) {
        auto it = index.find(t.name);
        if (it == index.end()) {
          Table m;
          m.name = t.name;
          m.metadata = t.metadata;
          if (!result.sweeps.empty()) m.columns.push_back("point");
          for (const auto& a : result.sweeps) m.columns.push_back(a.key);
          m.columns.insert(m.columns.end(), t.columns.begin(), t.columns.end());
          it = index.emplace(t.name, result.tables.size()).first;
          result.tables.push_back(std::move(m));
        }
        Table& m = result.tables[it->second];
        for (const auto& row : t.rows) {
          std::vector<Cell> r;
          if (!result.sweeps.empty()) r.push_back(static_cast<long long>(p));
          for (double v : points[p]) r.push_back(v);
          r.insert(r.end(), row.begin(), row.end());
          m.add_row(std::move(r));
        }
        for (const auto& kv : t.metadata)
          if (kv.first == "warning" && std::find(m.metadata.begin(), m.metadata.end(), kv) == m.metadata.end())
            m.metadata.push_back(kv);
      }
    result.parameters = config.effective(sections);
  }

  for (auto& t : result.tables) {
    auto meta = common_metadata(o);
    meta.insert(meta.end(), t.metadata.begin(), t.metadata.end());
    for (const auto& [k, v] : result.parameters) meta.emplace_back("param " + k, v);
    for (const auto& a : result.sweeps)
      meta.emplace_back("sweep " + a.key, format_number(a.values.front()) + ":" + format_number(a.values.back()) +
                                              ":" + std::to_string(a.values.size()));
    t.metadata = std::move(meta);
  }
  return result;
}

void write_outputs(const RunOptions& o, const RunResult& r) {
  namespace fs = std::filesystem;
  fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw CliError(exit_io, "cannot create output directory " + o.out_dir);

  nlohmann::ordered_json manifest;
  manifest["generator"] = std::string("mwg ") + mwg_version();
  manifest["command"] = o.command == "figure" ? "figure " + o.figure : o.command;
  manifest["format"] = o.format;
  if (o.command != "figure" && o.command != "derive-params") manifest["variant"] = o.variant;
  if (!o.ell.empty()) manifest["channels"] = o.ell;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  manifest["parameters"] = params;
  nlohmann::ordered_json sweeps = nlohmann::ordered_json::array();
  for (const auto& a : r.sweeps) sweeps.push_back({{"key", a.key}, {"values", a.values}});
  manifest["sweeps"] = sweeps;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& t : r.tables) {
    std::string name = t.name + (o.format == "csv" ? ".csv" : ".json");
    std::ostringstream s;
    if (o.format == "csv")
      write_csv(t, s);
    else
      write_json(t, s);
    write_file(dir / name, s.str());
    files.push_back({{"file", name}, {"kind", "table"}, {"columns", t.columns}, {"rows", t.rows.size()}});
  }
  for (const auto& [name, text] : r.scripts) {
    write_file(dir / name, text);
    files.push_back({{"file", name}, {"kind", "plot script"}});
  }
  manifest["files"] = files;
  write_file(dir / "manifest.json", manifest.dump(1) + "\n");
}

int run(const RunOptions& o) {
  try {
    Config config = o.config_path ? Config::from_file(*o.config_path) : Config{};
    RunResult r = execute(o, config);
    write_outputs(o, r);
    return exit_ok;
  } catch (const CliError& e) {
    std::cerr << "mwg: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "mwg: internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

}  // namespace mwgcli
