"""Walk through the almost-disjoint branch family.

Finite words over {1,2} are identified with the positive integers; an
infinite branch word owns the codes of its prefixes.  Distinct branches share
only the codes of their common prefixes, so element sets are infinite with
finite pairwise intersections.
"""

from zfilterlab import (
    BranchIndex,
    Registry,
    branch_elements,
    branch_member,
    decode_code,
    density_count,
    encode_string,
    find_cover,
    find_separator,
    intersection_exact,
)

# --- the word codec -------------------------------------------------------

print("codes of the words 1, 2, 12, 22, 111:")
for w in ("1", "2", "12", "22", "111"):
    print(f"  {w!r} -> {encode_string(w)}")

print("decoding 1..14:", ",".join(decode_code(n) for n in range(1, 15)))
# length-n words occupy the block [2^n - 1, 2^(n+1) - 2], so longer prefixes
# always carry larger codes

# --- branches and their element sets --------------------------------------

all1 = BranchIndex("", "1", rank=0, label="a")     # 111111...
all2 = BranchIndex("", "2", rank=1, label="b")     # 222222...
mixed = BranchIndex("1", "2", rank=2, label="c")   # 122222...

print("\nfirst elements of each branch set:")
for br in (all1, all2, mixed):
    print(f"  {br.label} = {br.literal():>5}  ->  {branch_elements(br, 6)}")

print("\nis 7 an element of the all-ones branch?", branch_member(all1, 7))
print("is 7 an element of the all-twos branch?", branch_member(all2, 7))

# --- exact intersections ---------------------------------------------------

print("\nexact pairwise intersections (codes of common prefixes):")
print("  a ^ b =", sorted(intersection_exact(all1, all2)))
print("  a ^ c =", sorted(intersection_exact(all1, mixed)))
print("  b ^ c =", sorted(intersection_exact(all2, mixed)))
# the intersection size equals the length of the longest common prefix

# --- separators ------------------------------------------------------------

# the least element of one branch set avoiding finitely many others exists
# because the pairwise intersections are finite
l = find_separator(all1, [all2, mixed])
print(f"\nleast element of a escaping b and c: {l} (word {decode_code(l)!r})")

# --- covers with a rank floor ----------------------------------------------

# every initial segment {1..l} can be covered by branches of arbitrarily high
# rank: continuum-many branches pass through each tree node, so fresh ones
# can always be minted above any floor
reg = Registry([all1, all2, mixed])
cover = find_cover(6, 10, reg, base=[all1])
print("\ncover of {1..6} jointly with branch a, ranks >= 10:")
for c in cover:
    print(f"  {c.label}: {c.literal()} rank={c.rank}")
for n in range(1, 7):
    holders = [b.label for b in [all1, *cover] if branch_member(b, n)]
    print(f"  {n} covered by {holders}")

# --- density ----------------------------------------------------------------

print("\nbranches through selected codes at depth 5:")
for n in (1, 4, 7):
    print(f"  code {n} (word {decode_code(n)!r}): {density_count(n, 5)} of 32 words")
