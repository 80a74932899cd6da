"""Compare the constructed certificate with brute-force search on small 4-braids."""

from braidfol.braid_core import format_braid
from braidfol.construction import construct
from braidfol.corpus import standardized_prime_words
from braidfol.oracle import exhaustive_search

for w in standardized_prime_words(4, 10):
    cert = construct(w)
    best = exhaustive_search(w)
    print(
        f"{format_braid(w):<28} g={cert.genus}  construct {cert.tau_sup}  "
        f"search {best.best_tau} over {best.explored} assignments"
    )
