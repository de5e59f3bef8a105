"""Extendibility certificates and strictly monotone filter-base chains.

Every engine output is a certificate the independent checker re-verifies
from the payload alone.
"""

from zfilterlab import (
    Atom,
    Truncation,
    Whole,
    check_certificate,
    check_extendibility_a,
    check_extendibility_b,
    containment_decreasing,
    containment_full_product,
    decreasing_chain_engine,
    increasing_chain_engine,
    make_registry,
)

trunc = Truncation(4, 6)

# --- extendibility, condition (a) -------------------------------------------

reg = make_registry([("", "1"), ("", "2"), ("1", "2")])
cert = check_extendibility_a(reg, trunc)
print("extendibility (a):", len(cert.payload["entries"]), "witness points, e.g.")
for entry in cert.payload["entries"][:3]:
    print(f"  alpha={entry['alpha']} group={entry['group']} point={entry['point']}")
print("checker verdict:", check_certificate(cert).ok)

# --- extendibility, condition (b) -------------------------------------------

reg = make_registry([("", "1"), ("", "2"), ("1", "2")])
cert = check_extendibility_b(Atom(reg.entries[1]), reg.entries[0], reg, trunc)
print("\nextendibility (b) for N_b against entry a:")
print("  hypothesis group:", cert.payload["hypothesis_group"])
print("  separator:", cert.payload["separator"])
print("  exceptions:", cert.payload["exceptions"])
print("  members certified:", [m["beta"] for m in cert.payload["members"]])
print("checker verdict:", check_certificate(cert).ok)

# the whole space needs no exceptions at all
reg = make_registry([("", "1"), ("", "2"), ("1", "2")])
cert = check_extendibility_b(Whole(), reg.entries[0], reg, trunc)
print("whole-space exceptions:", cert.payload["exceptions"])

# --- closure containment with a rank floor -----------------------------------

reg = make_registry([("", "1"), ("", "2"), ("1", "2")])
rep = containment_decreasing([reg.entries[0]], [reg.entries[1]], 10, reg, trunc)
print("\nclosure containment: subtract N_a from N_b, cover past rank 10")
print("  separators:", rep.separators, "cover:",
      [(c.literal(), c.rank) for c in rep.cover])
count = sum(1 for _ in rep.point_verdicts())
print(f"  {count} truncated points of the shrunken intersection, all witnessed")
print("checker verdict:", check_certificate(rep.certificate).ok)

# --- the full product needs no cover ------------------------------------------

reg = make_registry([("", "1"), ("", "2"), ("1", "2")])
rep = containment_full_product([reg.entries[0]], [reg.entries[1]], trunc)
print("\nfull product: puncturing N_b out of N_a leaves a dense set")
print("  escape positions per class, e.g.",
      [(sorted(cw.support), list(cw.escapes)) for cw in rep.classes[:3]])
print("checker verdict:", check_certificate(rep.certificate).ok)

# --- strictly monotone chains ---------------------------------------------------

reg = make_registry(
    [("", "1"), ("", "2"), ("1", "2"), ("12", "1"), ("2", "1")]
)
inc = increasing_chain_engine(reg, 5, trunc)
print("\nincreasing chain bases:", inc.certificate.payload["bases"])
reg = make_registry(
    [("", "1"), ("", "2"), ("1", "2"), ("12", "1"), ("2", "1")]
)
dec = decreasing_chain_engine(reg, 5, trunc)
print("decreasing chain bases:", dec.certificate.payload["bases"])
strict = [p for p in dec.certificate.payload["pairs"] if not p["member"]]
print("strictness witnesses (decreasing):",
      [(p["alpha"], p["base_index"], p["point"]) for p in strict[:4]])
print("checker verdicts:", check_certificate(inc.certificate).ok,
      check_certificate(dec.certificate).ok)
