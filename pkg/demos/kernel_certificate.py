"""Exact rank certificates for the classical limit map.

The central element c_w is killed, and it is the only thing killed inside the
window.  Shrinking the truncation below 2S+2 makes the certificate fail.
"""
from dyshift import build_cartan
from dyshift.limitphi import injectivity_window, kernel_window

for M in (9, 10, 12):
    rep = kernel_window(4, 4, M)
    print(f"M={M:2d}: rank {rep.rank}/{rep.domain_dim}, nullity {rep.nullity}, passed={rep.passed}")

rep = injectivity_window(build_cartan("A2~"), 4, 12)
print(f"A2~ generator window: rank {rep.rank}/{rep.domain_dim}, injective={rep.passed}")
