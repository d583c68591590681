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

fig, (a, b) = plt.subplots(2, 1, figsize=(6, 7))
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
