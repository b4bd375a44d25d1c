#!/usr/bin/env python3
"""Generate the bundled synthetic `toy-nation` dataset.

Ten regions, three with geological storage (R2 deliberately oversized).
Investment-cost curves are derived from a target break-even carbon price per
region and technology, so the carbon-price response is spread across the
10,000-220,000 JPY/t range. Output is deterministic.

usage: gen_toy_nation.py [OUT_DIR]   (default: data/toy-nation next to this script)
"""

import json
import sys
from pathlib import Path

START, T = 2018, 33
YEARS = list(range(START, START + T))

# id, lat, lon, baseline Mt, storage Mt
REGIONS = [
    ("R1", 43.06, 141.35, 60, 30),
    ("R2", 37.75, 140.47, 70, 90),
    ("R3", 38.27, 140.87, 30, 0),
    ("R4", 35.69, 139.69, 200, 0),
    ("R5", 35.18, 136.91, 120, 0),
    ("R6", 34.69, 135.50, 110, 0),
    ("R7", 34.39, 132.46, 50, 0),
    ("R8", 33.59, 130.40, 60, 25),
    ("R9", 33.84, 132.77, 40, 0),
    ("R10", 26.21, 127.68, 20, 0),
]

# per region: (h GWh/GW, potential GW, break-even carbon price JPY/t)
SOLAR = {
    "R1": (1000, 20, 260_000), "R2": (1200, 22, 150_000), "R3": (1150, 15, 40_000),
    "R4": (1250, 25, 90_000), "R5": (1300, 25, 15_000), "R6": (1250, 20, 120_000),
    "R7": (1280, 18, 60_000), "R8": (1300, 20, 190_000), "R9": (1220, 15, 105_000),
    "R10": (1350, 10, 340_000),
}
WIND = {
    "R1": (2600, 50, 20_000), "R2": (2200, 30, 80_000), "R3": (2000, 25, 130_000),
    "R4": (1500, 5, 400_000), "R5": (1700, 15, 210_000), "R6": (1600, 8, 280_000),
    "R7": (1900, 20, 70_000), "R8": (2100, 25, 45_000), "R9": (2300, 22, 160_000),
    "R10": (2800, 20, 240_000),
}

# Feed-in tariff, JPY/kWh: high early contracts, 8 JPY/kWh from 2021 on.
FIT = {
    "solar": [18, 14, 12] + [8] * (T - 3),
    "wind": [19, 18, 17] + [8] * (T - 3),
}
# Fractional cost decline over the horizon (linear learning curve).
LEARNING = {"solar": 0.45, "wind": 0.30}
KT_PER_GWH = 0.5  # offset per unit of generation, kt CO2 per GWh


def learning(tech, t):
    return 1.0 - LEARNING[tech] * t / (T - 1)


def tail(tech, t):
    return sum(FIT[tech][t:])


def break_even(tech, h, rp0):
    # Carbon price at which the best installation year turns profitable:
    # rp(t) - cp * g - h * sum_{tau >= t} sp(tau) = 0, with g = 500 h t/GW.
    return min(2000.0 * (rp0 * learning(tech, t) / h - tail(tech, t)) for t in range(T))


def rp0_for(tech, h, target):
    lo, hi = 0.0, 5_000_000.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if break_even(tech, h, mid) < target:
            lo = mid
        else:
            hi = mid
    return round(hi)


def cap_mt(year):
    if year < 2030:
        return None
    return 720 - 8 * (year - 2030)


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "toy-nation"
    (out / "series").mkdir(parents=True, exist_ok=True)

    globals_ = {
        "name": "toy-nation",
        "horizon": {"start_year": START, "num_years": T},
        "units": {
            "emissions": "Mt",
            "price": "JPY/t",
            "transport_cost": "JPY/(t*km)",
            "feed_in_tariff": "JPY/kWh",
            "investment_cost": "JPY/kW",
            "conversion_ratio": "kt/GW",
        },
        "carbon_price": 10000,
        "ccs_price": 10000,
        "transport_cost": 8.1739,
        "cap": [cap_mt(y) for y in YEARS],
        "feed_in_tariff": FIT,
        "alpha": {"solar": 0.31, "wind": 0.69},
    }
    (out / "globals.json").write_text(json.dumps(globals_, indent=2) + "\n")

    lines = ["id,C0_tonnes,lat,lon,ccs_capacity_tonnes"]
    for rid, lat, lon, c0, storage in REGIONS:
        lines.append(f"{rid},{c0 * 1_000_000},{lat},{lon},{storage * 1_000_000}")
    (out / "regions.csv").write_text("\n".join(lines) + "\n")

    lines = ["region_id,tech,potential_gw,h_gwh_per_gw,rp_series,g_series"]
    for rid, *_ in REGIONS:
        for tech, table in (("solar", SOLAR), ("wind", WIND)):
            h, potential, target = table[rid]
            rp0 = rp0_for(tech, h, target)
            rp_name, g_name = f"rp_{tech}_{rid}", f"g_{tech}_{rid}"
            lines.append(f"{rid},{tech},{potential},{h},{rp_name},{g_name}")
            rp = ["year,value"] + [f"{y},{round(rp0 * learning(tech, t))}" for t, y in enumerate(YEARS)]
            g = ["year,value"] + [f"{y},{KT_PER_GWH * h:g}" for y in YEARS]
            (out / "series" / f"{rp_name}.csv").write_text("\n".join(rp) + "\n")
            (out / "series" / f"{g_name}.csv").write_text("\n".join(g) + "\n")
    (out / "tech.csv").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
