"""Build and check the certificate for the 4-braid with genus 12, then draw it."""

import sys

from braidfol.braid_core import format_braid, parse_braid
from braidfol.construction import construct
from braidfol.oracle import verify_certificate
from braidfol.surface_model import render

WORD = "2 1 3 2 3^2 2 1 3 2 3^3 2 3 1 2 3^2 2 3 3 3 2 3 3 2"

cert = construct(parse_braid(WORD))
print("braid     ", format_braid(cert.braid))
print("genus     ", cert.genus)
print("arcs      ", cert.assignment.describe())
print("linked    ", cert.ledger.pairs)
print("tau_sup   ", cert.tau_sup, "(2g-2 =", 2 * cert.genus - 2, ")")
print("oracle    ", "valid" if verify_certificate(cert) else "INVALID")
for line in cert.case_trace:
    print("  ", line)
print(render(cert.assignment.diagram, cert.assignment, "ascii"))
if len(sys.argv) > 1:
    with open(sys.argv[1], "w", encoding="utf-8") as fh:
        fh.write(render(cert.assignment.diagram, cert.assignment, "svg"))
    print("wrote", sys.argv[1])
