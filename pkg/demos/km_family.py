"""Tabulate the K_m family: crossing counts, genus and certified slope bound."""

import time

from braidfol.braid_core import standardize
from braidfol.construction import construct, km_family

print(f"{'m':>3} {'counts':>14} {'g':>4} {'tau_sup':>8} {'2g-2':>5} {'secs':>6}")
for m in range(1, 11):
    start = time.perf_counter()
    b = km_family(m)
    cert = construct(b)
    secs = time.perf_counter() - start
    counts = standardize(b).counts()
    print(f"{m:>3} {str(counts):>14} {cert.genus:>4} {cert.tau_sup:>8} {2 * cert.genus - 2:>5} {secs:>6.2f}")
