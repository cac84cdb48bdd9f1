"""Walk one surface down the chain of area lower bounds.

The surface below has two level-set components: a double cover with a
wavy Gauss map and a plain catenoidal piece.  Every level curve turns the
same way, so its area is bounded below by the optimal catenoidal waist of
the same slab, through five intermediate quantities.
"""

from slabarea import GaussMap, SlabSurface, verify_chain
from slabarea.slab_analysis import CHAIN_LABELS, h_profile

surface = SlabSurface(
    0.8,
    [
        GaussMap(2, 7.0, {1: 0.4 - 0.2j, 0: 0.3, -2: 0.1j}),
        GaussMap(1, 4.0, {-1: 0.5}),
    ],
)

hp = h_profile(surface, [-0.8, -0.4, 0.0, 0.4, 0.8])
print(f"averaged profile h(u) = {hp.slope:.6f} u + {hp.intercept:.6f}")
print(f"  2 pi (total winding) / flux = {6.283185307179586 * surface.sum_n / surface.f_total:.6f}")

report = verify_chain(surface)
names = ["area", "int f cosh^2 h", "int f cosh^2 k", "waist(d0)", "waist(0)", "optimal waist"]
for name, q in zip(names, report.quantities):
    print(f"{name:>16} = {q:12.6f}")
print()
for label, slack, ok in zip(CHAIN_LABELS, report.slacks, report.link_pass):
    print(f"{label:<26} slack {slack:11.3e}  {'ok' if ok else 'FAILED'}")
print(f"\ncomparison line case: {report.line.case_tag}, d0 = {report.line.offset:.6f}")
print(f"verdict: {report.verdict}, equality case: {report.equality_case}")
