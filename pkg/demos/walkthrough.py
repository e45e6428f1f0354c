"""Walk through one middle derivation on Z * Z and one on the F2 x Z loop.

    python3 demos/walkthrough.py
"""

from gogword import load_fixture, solve
from gogword.derivation import DerivationTrace, middle_derive_admissible, middle_derive_trivial_edges
from gogword.normal_form import normalize

zz = load_fixture("zz")
word = zz.parse_word("a b b^-1 a b")
nw = normalize(zz, word)
print("normal word      ", nw)
print("derived lengths  ", nw.lengths)

trace = DerivationTrace()
out, was_trivial = middle_derive_trivial_edges(zz, nw, trace=trace)
print("after derivation ", out, out.lengths)
print("split sequence   ", trace.split_sequence)
print("counters         ", trace.counters)
print("verdict          ", solve(zz, word).verdict)

# The loop fixture: t x t^-1 = z and t z t^-1 = y inside F2 x Z.
hnn = load_fixture("hnn_f2z")
for text in ("t t x T T y^-1", "t x z T", "t x z T y^-1 z^-1"):
    w = hnn.parse_word(text)
    nw = normalize(hnn, w)
    first, _ = middle_derive_admissible(hnn, nw)
    report = solve(hnn, w, check_invariants=True)
    print(f"\n{text}\n  first derivation {first}\n  {report.verdict} after {report.iterations} "
          f"derivation(s), bound {report.bound}, charge {report.charge}")
