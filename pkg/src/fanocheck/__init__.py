"""fanocheck: exact-arithmetic verification toolkit for Fano fibre-space numerics.

Subpackages cover: exact fields and sparse polynomials, a Groebner/slicing/
enumeration dimension engine, pointwise regularity condition batteries,
closed-form codimension tables, hypertangent multiplicity chains, linear
inequality exclusion certificates, and the bidegree intersection ring used
for the twistedness test on product fibre spaces.
"""

__version__ = "0.1.0"
