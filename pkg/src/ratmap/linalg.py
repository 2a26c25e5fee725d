"""Sparse exact linear algebra over the rationals.

Vectors are dicts ``column -> Fraction`` with integer columns.  The pivot of
a row is its smallest column, so every choice made here depends only on
the column order handed in by the caller.
"""

from __future__ import annotations

from fractions import Fraction


def axpy(target: dict, coeff, vec: dict) -> None:
    """``target += coeff * vec`` in place, dropping zeros."""
    if not coeff:
        return
    for k, v in vec.items():
        x = target.get(k, 0) + coeff * v
        if x:
            target[k] = x
        else:
            target.pop(k, None)


def scaled(vec: dict, coeff) -> dict:
    if not coeff:
        return {}
    return {k: coeff * v for k, v in vec.items()}


class Echelon:
    """Fully reduced row echelon basis of a growing subspace.

    Each stored row has coefficient 1 at its pivot and 0 at every other
    pivot.  With ``track=True`` each row also remembers how it was built
    from the tagged input vectors, which gives kernels and preimages.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[int, dict] = {}
        self.track = track
        self.combos: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[dict]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]

    def reduce(self, vec: dict):
        """Return ``(remainder, combo)`` with ``vec = sum combo[t]*input_t + remainder``.

        The remainder is zero at every pivot.
        """
        rem = {k: Fraction(v) for k, v in vec.items() if v}
        combo = {} if self.track else None
        for p in [k for k in rem if k in self.rows]:
            c = rem.get(p, 0)
            if not c:
                continue
            axpy(rem, -c, self.rows[p])
            if self.track:
                axpy(combo, c, self.combos[p])
        return rem, combo

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def add(self, vec: dict, tag=None):
        """Insert a vector.  Returns ``(True, None)`` if it enlarged the span,
        otherwise ``(False, combo)`` expressing it through earlier inputs."""
        rem, combo = self.reduce(vec)
        if not rem:
            return False, combo
        if self.track:
            # rem = vec - sum combo*inputs
            combo = {t: -c for t, c in combo.items()}
            axpy(combo, 1, {tag: Fraction(1)})
        p = min(rem)
        inv = 1 / rem[p]
        row = scaled(rem, inv)
        if self.track:
            combo = scaled(combo, inv)
        for q, other in self.rows.items():
            c = other.get(p, 0)
            if c:
                axpy(other, -c, row)
                if self.track:
                    axpy(self.combos[q], -c, combo)
        self.rows[p] = row
        if self.track:
            self.combos[p] = combo
        return True, None

    def coordinates(self, vec: dict) -> dict | None:
        """Coefficients on the stored rows (keyed by pivot), or ``None`` if
        ``vec`` is outside the span."""
        rem, _ = self.reduce(vec)
        if rem:
            return None
        return _pivot_coords(self, vec)

    def preimage(self, vec: dict) -> dict | None:
        """With tracking: a combination of tagged inputs summing to ``vec``."""
        if not self.track:
            raise ValueError("preimage needs a tracking echelon")
        rem, combo = self.reduce(vec)
        if rem:
            return None
        return combo


def _pivot_coords(ech: Echelon, vec: dict) -> dict:
    # vec lies in the span of fully reduced rows, so its value at each
    # pivot is exactly the coefficient of that row
    return {p: Fraction(vec[p]) for p in ech.rows if vec.get(p)}


def rank(vectors) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def rref(vectors) -> list[dict]:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.basis()


def kernel(columns: list[dict]) -> list[dict]:
    """Basis (in reduced echelon form) of ``{c : sum_j c_j columns[j] = 0}``."""
    ech = Echelon(track=True)
    relations = []
    for j, col in enumerate(columns):
        added, combo = ech.add(col, tag=j)
        if not added:
            rel = {t: -c for t, c in combo.items()}
            rel[j] = rel.get(j, 0) + 1
            relations.append({k: v for k, v in rel.items() if v})
    return rref(relations)
