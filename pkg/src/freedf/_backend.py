"""Integer backend selection.

The elimination and transform kernels work on plain integers. When gmpy2
is importable its mpz type is used instead (GMP is clearly faster once
the intermediate values grow past a few machine words). Set
FREEDF_PURE_PYTHON=1 to force the stdlib path, e.g. for benchmarking.
"""

import os

BACKEND = "python"
mpz = int

if not os.environ.get("FREEDF_PURE_PYTHON"):
    try:
        import gmpy2

        mpz = gmpy2.mpz
        BACKEND = "gmpy2"
    except ImportError:
        pass


def wrap_matrix(rows):
    """Copy an integer matrix into backend integers."""
    return [[mpz(x) for x in row] for row in rows]
