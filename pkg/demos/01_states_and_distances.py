#!/usr/bin/env python3
"""Tour of the state primitives: building states, marginals, distances."""

import numpy as np

from weakcorr import (
    diagonal_distance,
    ghz,
    ket,
    ket2dm,
    maximally_mixed,
    partial_trace,
    random_density_matrix,
    tensor_product,
    trace_distance,
)
from weakcorr.bases import computational_basis
from weakcorr.qcore import PureState

print("=" * 72)
print("States live on tensor-factored spaces; the first party is the")
print("most significant index of the flattened vector.")
print("=" * 72)

zero = ket("0")
one = ket("1")
plus = PureState.normalized((2,), [1, 1])

print("\n|0> (x) |0> amplitudes:", tensor_product(zero, zero).amplitudes.real)
print("|+> (x) |-> amplitudes:",
      tensor_product(plus, PureState.normalized((2,), [1, -1])).amplitudes.real)

g = ket2dm(ghz(3))
print("\nGHZ density matrix diagonal:", g.diagonal())

print("\nMarginals of GHZ are maximally mixed:")
print(partial_trace(g, [0]).matrix.real)

print("\nA product state factorizes under partial trace:")
a = random_density_matrix((2,), seed=1)
b = random_density_matrix((2,), seed=2)
joint = tensor_product(a, b)
print("max |marginal - factor| =",
      np.max(np.abs(partial_trace(joint, [0]).matrix - a.matrix)))

print("\nDistances:")
print("D(|0>, |1>)        =", trace_distance(ket2dm(zero), ket2dm(one)))
print("D(|0>, |+>)        =", trace_distance(ket2dm(zero), ket2dm(plus)),
      " (should be 1/sqrt(2) = %.5f)" % (1 / np.sqrt(2)))

mixed = maximally_mixed((2, 2, 2))
basis = computational_basis((2, 2, 2))
print("\nGHZ vs fully mixed state:")
print("trace distance     =", trace_distance(g, mixed))
print("diagonal distance  =", diagonal_distance(g, mixed, basis),
      " (only compares populations; never exceeds the trace distance)")
