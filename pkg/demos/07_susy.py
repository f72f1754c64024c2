"""
Boson x parafermion coherent states
===================================

The boson factor is a truncated float vector with explicit error bounds.
The parafermion factor stays exact.
"""

import numpy as np

from tgrass.susy import coherent_boson, displacement_vacuum, susy_coherent

z = 0.5 + 0.25j
st = susy_coherent(z, "paper", m_max=16)
print("parafermion factor:", st.ket)
print("(1 x a) = xi (1 x 1) exactly:", st.apply_a() == st.xi_times())

print(f"boson residual |b v - z v| = {st.b_residual():.3e}")
print(f"residual bound             = {st.residual_bound:.3e}")
print(f"norm-squared tail          = {st.tail_bound:.3e}")

# the displacement operator applied to the vacuum gives the same state
d = displacement_vacuum(z, "paper", 16)
print("displacement agrees:", d.ket == st.ket, np.max(np.abs(d.boson.vector - st.boson.vector)))

v = coherent_boson(1.0, 16)
print(f"e - |v|^2 for z = 1: {np.e - np.vdot(v.vector, v.vector).real:.2e} (tail {v.tail_bound:.2e})")
