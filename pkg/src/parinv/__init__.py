"""parinv: exact analytic invariants of identity-tangent diffeomorphisms.

Pipeline: multizeta ring (zeta) -> mould operations (mould) -> multitangent
reduction to monotangents (tangent) -> formal diffeo/generator series
(series) -> collector expansions (collector) -> invariants via Fourier
coefficients (invariants), cross-validated by two independent numeric
oracles (oracles).
"""

__version__ = "0.1.0"
