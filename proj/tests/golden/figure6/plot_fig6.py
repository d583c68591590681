import csv
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

fig, axes = plt.subplots(1, 5, figsize=(16, 3.5))
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
