#!/usr/bin/env python3
"""Print the steady-state spectra on both sides of the B/A = 1 transition.

The interesting birth is the real eigenvalue of S2 and S3: zero on the
line, splitting to -0.0149 / +0.0025 just off it, which flips both centers
into vortices and sets up the hole drilling.
"""

from toposurge.dynamics import SystemParams, equilibria, region, slow_manifold
from toposurge.serialize import fmt


def show(params: SystemParams) -> None:
    print(f"A={params.A} B={params.B} C={params.C}  ->  {region(params)}")
    for e in equilibria(params):
        lams = ", ".join(
            f"{fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}i"
            if z.imag else fmt(z.real)
            for z in sorted(e.eigen.eigenvalues, key=lambda z: z.imag)
        )
        coords = ", ".join(fmt(x) for x in e.coordinates)
        print(f"  {e.label} = ({coords})")
        print(f"      eigenvalues {{{lams}}}   {e.stability_class}")
    sm = slow_manifold(params)
    if sm.exists:
        print(f"  steady line through S2 and S3, centre {sm.center}")
    else:
        print("  no steady line; S2->S3 chord is the winding axis")
    print()


if __name__ == "__main__":
    show(SystemParams(3.0, 3.0, 3.0))
    show(SystemParams(2.9851, 3.0, 3.0))
