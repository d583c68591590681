#include "figures.hpp"

#include <cmath>
#include <numbers>

#include "api.hpp"
#include "errors.hpp"

namespace mwgcli {

namespace {

using std::numbers::pi;

Table make_table(const std::string& name, std::vector<std::string> columns) {
  Table t;
  t.name = name;
  t.columns = std::move(columns);
  return t;
}

mwg_grating grating(double phi0, double n0, double eta_p = 1, double eta_a = 1) {
  mwg_grating g;
  mwg_grating_init(&g);
  g.phi0 = phi0;
  g.n0 = n0;
  g.eta_p = eta_p;
  g.eta_a = eta_a;
  return g;
}

mwg_kdtli_config kdtli(double talbot, double f) {
  mwg_kdtli_config k;
  mwg_kdtli_config_init(&k);
  k.talbot = talbot;
  k.open_fraction = f;
  return k;
}

int harmonics_above(const Signal& s, double threshold) {
  const double* c = mwg_signal_components(s.get());
  int n = 0;
  for (std::size_t j = 1; j < mwg_signal_component_count(s.get()); ++j)
    n += std::hypot(c[2 * j], c[2 * j + 1]) / c[0] > threshold;
  return n;
}

const char* loader = R"py(import csv
import json
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def load(name):
    path = os.path.join(HERE, name + ".csv")
    if os.path.exists(path):
        with open(path, newline="") as f:
            lines = [line for line in f if not line.startswith("# ")]
        return list(csv.DictReader(lines))
    with open(os.path.join(HERE, name + ".json")) as f:
        table = json.load(f)
    return [dict(zip(table["columns"], map(str, row))) for row in table["rows"]]


def curve(rows, x, y, **match):
    sel = [r for r in rows if all(r[k] == v for k, v in match.items())]
    return [float(r[x]) for r in sel], [float(r[y]) for r in sel]

)py";

std::string script(const std::string& body) { return std::string(loader) + body; }

RunResult figure1() {
  RunResult r;
  Table t = make_table("fig1_visibility", {"n0", "variant", "channel", "talbot_ratio", "v_sin"});
  t.metadata = {{"model", "closed-form"}, {"observable", "sinusoidal visibility 2 Re S_1 / S_0"}};
  auto curve = [&](double n0, mwg_variant v, int ell) {
    Source src = closed_form_source(grating(pi, n0), v);
    for (int i = 1; i <= 400; ++i) {
      double xi = 2.0 * i / 400;
      t.add_row({n0, v == MWG_QUANTUM ? "quantum" : "classical", channel_label(ell), xi,
                 kdtli_visibility(src, kdtli(xi, 0.42), ell)});
    }
  };
  for (double n0 : {0.0, 1.0}) {
    curve(n0, MWG_QUANTUM, MWG_SUM);
    curve(n0, MWG_CLASSICAL, MWG_SUM);
  }
  for (int ell : {0, 1, 2}) curve(1.0, MWG_QUANTUM, ell);
  r.tables.push_back(std::move(t));
  r.parameters = {{"open_fraction", "0.42"}, {"phi0_rad", "pi"}, {"n0", "0, 1"}, {"talbot_ratio", "(0, 2], 400 points"}};
  r.scripts.emplace_back("plot_fig1.py", script(R"py(rows = load("fig1_visibility")
fig, (a, b) = plt.subplots(2, 1, figsize=(6, 7), sharex=True)
for n0, style in (("0", ":"), ("1", "-")):
    for variant, color in (("quantum", "k"), ("classical", "r")):
        x, y = curve(rows, "talbot_ratio", "v_sin", n0=n0, variant=variant, channel="sum")
        a.plot(x, y, style, color=color, label=f"{variant}, n0={n0}")
for ell in ("0", "1", "2"):
    x, y = curve(rows, "talbot_ratio", "v_sin", n0="1", variant="quantum", channel=ell)
    b.plot(x, y, label=f"l={ell}")
a.set_ylabel("V_sin")
b.set_ylabel("V_sin")
b.set_xlabel("L / L_T")
a.legend()
b.legend()
fig.savefig(os.path.join(HERE, "fig1.png"), dpi=150)
)py"));
  return r;
}

RunResult figure2() {
  RunResult r;
  Table sig = make_table("fig2_interferograms", {"talbot_ratio", "channel", "x_s", "signal"});
  Table sum = make_table("fig2_summary", {"talbot_ratio", "channel", "v_sin", "v_minmax", "mean"});
  sig.metadata = {{"model", "closed-form/quantum"}, {"normalization", "probability per shift"}};
  sum.metadata = {{"model", "closed-form/quantum"}};
  Source src = closed_form_source(grating(pi, 1.0), MWG_QUANTUM);
  for (double xi : {3.25, 4.25})
    for (int ell : {0, 1, 2, MWG_SUM}) {
      auto k = kdtli(xi, 0.42);
      Signal s = kdtli_signal(src, k, ell);
      const double* x = mwg_signal_shifts(s.get());
      const double* y = mwg_signal_values(s.get());
      for (std::size_t i = 0; i < mwg_signal_length(s.get()); ++i) sig.add_row({xi, channel_label(ell), x[i], y[i]});
      sum.add_row({xi, channel_label(ell), kdtli_visibility(src, k, ell), minmax_visibility(s), mwg_signal_mean(s.get())});
    }
  r.tables.push_back(std::move(sig));
  r.tables.push_back(std::move(sum));
  r.parameters = {{"open_fraction", "0.42"}, {"phi0_rad", "pi"}, {"n0", "1"}, {"talbot_ratio", "3.25, 4.25"}};
  r.scripts.emplace_back("plot_fig2.py", script(R"py(rows = load("fig2_interferograms")
fig, axes = plt.subplots(1, 2, figsize=(9, 5), sharey=True)
for ax, xi in zip(axes, ("3.25", "4.25")):
    offset = 0.0
    for ell in ("0", "1", "2", "sum"):
        x, y = curve(rows, "x_s", "signal", talbot_ratio=xi, channel=ell)
        top = max(y)
        ax.plot(x, [v / top + offset for v in y], label="sum" if ell == "sum" else f"l={ell}")
        offset += 1.2
    ax.set_title(f"L / L_T = {xi}")
    ax.set_xlabel("x_s / d")
axes[0].legend()
fig.savefig(os.path.join(HERE, "fig2.png"), dpi=150)
)py"));
  return r;
}

RunResult figure4() {
  RunResult r;
  Table t = make_table("fig4_density", {"n0", "channel", "x_dx", "density", "smoothed"});
  t.metadata = {{"model", "closed-form/quantum/fourier"},
                {"normalization", "probability per unit x/dx"},
                {"resolution", "gaussian sigma=0.1"}};
  mwg_farfield_config f;
  mwg_farfield_config_init(&f);
  f.slit_ratio = 10;
  f.period_ratio = 1e-3;
  std::vector<double> screen(601);
  for (int i = 0; i < 601; ++i) screen[i] = -3.0 + 0.01 * i;
  auto add = [&](double n0, int ell) {
    Source src = closed_form_source(grating(2.5, n0), MWG_QUANTUM);
    Density d = farfield(src, f, screen, ell, MWG_FARFIELD_FOURIER);
    Density s = smooth(d, 0.1, MWG_KERNEL_GAUSSIAN);
    const double* v = mwg_density_values(d.get());
    const double* sv = mwg_density_values(s.get());
    for (std::size_t i = 0; i < screen.size(); ++i) t.add_row({n0, channel_label(ell), screen[i], v[i], sv[i]});
  };
  add(0.0, MWG_SUM);
  for (double n0 : {2.0, 10.0})
    for (int ell : {MWG_SUM, 0, 1, 2, 3}) add(n0, ell);
  r.tables.push_back(std::move(t));
  r.parameters = {{"phi0_rad", "2.5"}, {"n0", "0 (reference), 2, 10"}, {"slit_ratio", "10"},
                  {"period_ratio", "0.001"}, {"sigma_det_dx", "0.1"}};
  r.scripts.emplace_back("plot_fig4.py", script(R"py(rows = load("fig4_density")
fig, (a, b) = plt.subplots(2, 1, figsize=(6, 7), sharex=True)
for n0, color in (("0", "0.6"), ("2", "k"), ("10", "r")):
    x, y = curve(rows, "x_dx", "smoothed", n0=n0, channel="sum")
    a.plot(x, y, color=color, label=f"n0={n0}")
offset = 0.0
for ell in ("0", "1", "2", "3"):
    x, y = curve(rows, "x_dx", "smoothed", n0="2", channel=ell)
    top = max(y)
    b.plot(x, [v / top + offset for v in y], label=f"l={ell}")
    offset += 1.2
a.set_ylabel("density")
b.set_xlabel("x / dx")
a.legend()
b.legend()
fig.savefig(os.path.join(HERE, "fig4.png"), dpi=150)
)py"));
  return r;
}

RunResult figure5(int jobs) {
  RunResult r;
  const double etas[][2] = {{1, 1}, {1.5, 1}, {1, 1.5}};
  Table a = make_table("fig5a_visibility", {"eta_p", "eta_a", "talbot_ratio", "v_sin"});
  Table b = make_table("fig5b_visibility", {"eta_p", "eta_a", "n0", "v_sin"});
  a.metadata = {{"model", "ladder-analytic"}, {"observable", "unconditional sinusoidal visibility"}};
  b.metadata = a.metadata;
  for (const auto& e : etas) {
    Source src = ladder_source(grating(1.875, 1.5, e[0], e[1]), MWG_ENVELOPE_CONSTANT, MWG_LADDER_ANALYTIC, jobs);
    for (int i = 1; i <= 200; ++i) {
      double xi = 2.0 * i / 200;
      a.add_row({e[0], e[1], xi, kdtli_visibility(src, kdtli(xi, 0.42), MWG_SUM)});
    }
  }
  for (const auto& e : etas)
    for (int i = 0; i <= 40; ++i) {
      double n0 = 0.1 * i;
      Source src =
          ladder_source(grating(1.25 * n0, n0, e[0], e[1]), MWG_ENVELOPE_CONSTANT, MWG_LADDER_ANALYTIC, jobs);
      b.add_row({e[0], e[1], n0, kdtli_visibility(src, kdtli(2.2, 0.42), MWG_SUM)});
    }
  r.tables.push_back(std::move(a));
  r.tables.push_back(std::move(b));
  r.parameters = {{"open_fraction", "0.42"}, {"phi0_rad", "1.25 n0"}, {"n0", "1.5 (a), 0..4 (b)"},
                  {"eta", "(1, 1), (1.5, 1), (1, 1.5)"}, {"talbot_ratio", "(0, 2] (a), 2.2 (b)"}};
  r.scripts.emplace_back("plot_fig5.py", script(R"py(fig, (a, b) = plt.subplots(2, 1, figsize=(6, 7))
for (ep, ea) in (("1", "1"), ("1.5", "1"), ("1", "1.5")):
    x, y = curve(load("fig5a_visibility"), "talbot_ratio", "v_sin", eta_p=ep, eta_a=ea)
    a.plot(x, y, label=f"eta_p={ep}, eta_a={ea}")
    x, y = curve(load("fig5b_visibility"), "n0", "v_sin", eta_p=ep, eta_a=ea)
    b.plot(x, y, label=f"eta_p={ep}, eta_a={ea}")
a.set_xlabel("L / L_T")
b.set_xlabel("n0 (phi0 = 1.25 n0, L / L_T = 2.2)")
a.set_ylabel("V_sin")
b.set_ylabel("V_sin")
a.legend()
fig.tight_layout()
fig.savefig(os.path.join(HERE, "fig5.png"), dpi=150)
)py"));
  return r;
}

RunResult figure6(int jobs) {
  RunResult r;
  Table prof = make_table("fig6_profiles", {"pulse_area_rad", "x", "p0"});
  Table ref = make_table("fig6_ladder_reference", {"x", "p0"});
  Table sig = make_table("fig6_signals", {"pulse_area_rad", "x_s", "signal"});
  Table harm = make_table("fig6_harmonics", {"pulse_area_rad", "j", "abs_ratio"});
  Table sum = make_table("fig6_summary", {"pulse_area_rad", "harmonics_above_1e-2", "v_sin"});
  prof.metadata = {{"model", "rabi-exact"}, {"normalization", "ground-state population after the grating"}};
  ref.metadata = {{"model", "ladder l=0, n0=1.2"}};
  sig.metadata = {{"model", "rabi-exact"}, {"normalization", "ground-state detection, probability per shift"}};
  harm.metadata = {{"model", "rabi-exact"}};
  sum.metadata = {{"model", "rabi-exact"}};

  mwg_grating g = grating(0.0, 1.2);
  for (int i = 0; i < 512; ++i) {
    double x = i / 512.0, m[2];
    check(mwg_measurement_operator(&g, 0, x, m));
    ref.add_row({x, m[0] * m[0] + m[1] * m[1]});
  }
  for (int k = 1; k <= 4; ++k) {
    mwg_rabi_config c;
    mwg_rabi_config_init(&c);
    c.pulse_area = 2 * pi * k;
    std::vector<double> x(c.grid), p0(c.grid);
    check(mwg_rabi_populations(&c, MWG_RABI_EXACT, c.grid, x.data(), p0.data(), nullptr, nullptr));
    for (int i = 0; i < c.grid; ++i) prof.add_row({c.pulse_area, x[i], p0[i]});
    Source src = rabi_source(c, MWG_RABI_EXACT, jobs);
    auto kc = kdtli(2.0, 0.1);
    Signal s = kdtli_signal(src, kc, 0);
    const double* xs = mwg_signal_shifts(s.get());
    const double* ys = mwg_signal_values(s.get());
    for (std::size_t i = 0; i < mwg_signal_length(s.get()); ++i) sig.add_row({c.pulse_area, xs[i], ys[i]});
    const double* comp = mwg_signal_components(s.get());
    for (std::size_t j = 0; j < mwg_signal_component_count(s.get()); ++j)
      harm.add_row({c.pulse_area, static_cast<long long>(j), std::hypot(comp[2 * j], comp[2 * j + 1]) / comp[0]});
    sum.add_row({c.pulse_area, static_cast<long long>(harmonics_above(s, 1e-2)), kdtli_visibility(src, kc, 0)});
  }
  for (Table* t : {&prof, &ref, &sig, &harm, &sum}) r.tables.push_back(std::move(*t));
  r.parameters = {{"detuning_tl", "0"}, {"lifetime_tl", "1"}, {"pulse_area_rad", "2 pi, 4 pi, 6 pi, 8 pi"},
                  {"talbot_ratio", "2"}, {"open_fraction", "0.1"}};
  r.scripts.emplace_back("plot_fig6.py", script(R"py(fig, axes = plt.subplots(1, 5, figsize=(16, 3.5))
prof = load("fig6_profiles")
areas = sorted({r["pulse_area_rad"] for r in prof}, key=float)
x, y = curve(load("fig6_ladder_reference"), "x", "p0")
axes[0].plot(x, y, "k:", label="ladder n0=1.2")
for area in areas:
    x, y = curve(prof, "x", "p0", pulse_area_rad=area)
    axes[0].plot(x, y, label=f"{float(area) / 3.141592653589793:.0f} pi")
axes[0].set_xlabel("x / d")
axes[0].set_ylabel("p0")
axes[0].legend(fontsize=7)
sig = load("fig6_signals")
for ax, area in zip(axes[1:], areas):
    x, y = curve(sig, "x_s", "signal", pulse_area_rad=area)
    ax.plot(x, y)
    ax.set_title(f"{float(area) / 3.141592653589793:.0f} pi")
    ax.set_xlabel("x_s / d")
fig.tight_layout()
fig.savefig(os.path.join(HERE, "fig6.png"), dpi=150)
)py"));
  return r;
}

}  // namespace

RunResult run_figure(const std::string& which, int jobs, const std::string&) {
  if (which == "1") return figure1();
  if (which == "2") return figure2();
  if (which == "4") return figure4();
  if (which == "5") return figure5(jobs);
  if (which == "6") return figure6(jobs);
  throw CliError(exit_config, "figure must be one of 1, 2, 4, 5, 6");
}

}  // namespace mwgcli
