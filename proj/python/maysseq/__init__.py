"""May spectral sequence engine for the Morava stabilizer algebras S(n,k)."""

import json

from ._maysseq import (
    Error,
    IncompleteTable,
    InvalidParams,
    cli,
    collapse_status,
    d1,
    generators,
    is_nonzero_class,
    may_filtration,
    poincare,
    s0,
)


def e2(p, n, k, s_max=None):
    """E_2 table as the parsed JSON emitted by the `e2` command."""
    args = ["--prime", str(p), "--n", str(n), "--k", str(k), "--format", "json"]
    if s_max is not None:
        args += ["--smax", str(s_max)]
    code, out, err = cli(args + ["e2"])
    if code != 0:
        raise Error(err.strip())
    return json.loads(out)


__all__ = [
    "Error",
    "IncompleteTable",
    "InvalidParams",
    "cli",
    "collapse_status",
    "d1",
    "e2",
    "generators",
    "is_nonzero_class",
    "may_filtration",
    "poincare",
    "s0",
]
