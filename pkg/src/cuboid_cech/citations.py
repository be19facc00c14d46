"""Registered citation anchors; every verdict cites one of these and nothing else."""

ANCHORS = {
    "empty-degree": "no index sets of size k+1 exist when k > n, so the complex has no terms",
    "top-nonvanishing": "top cohomology is nonzero when kappa_i >= aleph_i for every i",
    "top-vanishing": "top cohomology vanishes when kappa_i < aleph_i for some i",
    "fubini-vanishing": "a (k-1)-Fubini partition trivializes every k-cocycle",
    "diagonal-cocycle": "the sigma-coded diagonal cocycle is nontrivial when kappa_(n-k) < cf kappa_(n-k+1) <= 2^kappa_0",
    "limit-of-coboundaries": "a continuous family of coboundaries with a non-P_k limit yields a nonzero class",
    "fubini-embedding": "a k-Fubini partition embeds H^k of every smaller tuple",
    "fubini-never": "(-1)-Fubini partitions never exist",
    "fubini-clopen": "every partition into clopen pieces is n-Fubini",
    "fubini-vmin": "the virtual-minimum rule is (n-1)-Fubini when kappa_i < aleph_i for some i",
    "fubini-min": "a k-Fubini partition with k < n-1 exists iff kappa_(n-k) = aleph_0 (min rule)",
    "open-question": "listed as open: no implemented theorem decides this case",
}


def cite(anchor: str) -> str:
    if anchor not in ANCHORS:
        raise KeyError(f"unregistered citation anchor {anchor!r}")
    return f"[{anchor}] {ANCHORS[anchor]}"


def is_registered(citation: str) -> bool:
    return any(citation == cite(a) for a in ANCHORS)
