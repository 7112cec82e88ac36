"""Scenario files: TOML descriptions of a group plus the computations to run on it.

See ``docs/scenario.md`` for the schema.  Everything is validated up front so
that a bad file fails before any expensive work starts, with a message naming
the offending field.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ScenarioError
from .groups import MatrixGroup, Subspace, as_matrix, is_invertible
from .polynomial import Polynomial, is_prime

THEOREMS = ("duflot", "es", "lifting", "stabilizer", "carlson", "comodule")
DEFAULT_CUTOFF = 8
KNOWN_KEYS = {
    "name", "p", "n", "generators", "cutoff", "depth_cutoff", "seed", "hsop", "grading",
    "theorems", "carlson", "lifting_trials", "sequences", "subspaces",
}


@dataclass(frozen=True)
class SequenceSpec:
    polynomials: tuple[tuple[tuple[tuple[int, ...], int], ...], ...]
    subspace: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class Scenario:
    p: int
    n: int
    generators: tuple[tuple[tuple[int, ...], ...], ...]
    name: str = ""
    cutoff: int = DEFAULT_CUTOFF
    depth_cutoff: int | None = None
    seed: int = 0
    hsop: str = "auto"
    grading: str = "algebraic"
    theorems: tuple[str, ...] = ("duflot", "es")
    carlson: tuple[int, ...] = (1,)
    lifting_trials: int = 0
    sequences: tuple[SequenceSpec, ...] = ()
    subspaces: tuple[tuple[tuple[int, ...], ...], ...] = field(default_factory=tuple)

    def group(self, **kw) -> MatrixGroup:
        return MatrixGroup(self.p, self.n, self.generators, **kw)

    def sequence_polynomials(self, i: int) -> list[Polynomial]:
        return [Polynomial(dict(terms), self.n, self.p) for terms in self.sequences[i].polynomials]

    def subspace(self, basis) -> Subspace:
        return Subspace.span(basis, self.p, self.n)

    def to_dict(self) -> dict[str, Any]:
        """Normalized echo for reports."""
        return {
            "name": self.name,
            "p": self.p,
            "n": self.n,
            "generators": [[list(r) for r in g] for g in self.generators],
            "cutoff": self.cutoff,
            "depth_cutoff": self.depth_cutoff,
            "seed": self.seed,
            "hsop": self.hsop,
            "grading": self.grading,
            "theorems": list(self.theorems),
            "carlson": list(self.carlson),
            "lifting_trials": self.lifting_trials,
            "sequences": [
                {
                    "polynomials": [[[list(m), c] for m, c in terms] for terms in s.polynomials],
                    "subspace": None if s.subspace is None else [list(v) for v in s.subspace],
                }
                for s in self.sequences
            ],
            "subspaces": [[list(v) for v in b] for b in self.subspaces],
        }


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioError(f"{path}: cannot read scenario: {exc.strerror}") from exc
    return parse_scenario(text, str(path))


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        # tomli reports "(at line L, column C)" in the message
        raise ScenarioError(f"{source}: parse error: {exc}") from exc
    return validate(data, source)


def _int(data: dict, key: str, source: str, minimum: int | None = None, default=None) -> int:
    if key not in data:
        if default is None:
            raise ScenarioError(f"{source}: missing required field '{key}'")
        return default
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ScenarioError(f"{source}: field '{key}' must be an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise ScenarioError(f"{source}: field '{key}' must be >= {minimum}, got {v}")
    return v


def _vector(v, n: int, p: int, where: str) -> tuple[int, ...]:
    if not isinstance(v, list) or len(v) != n or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise ScenarioError(f"{where}: expected a list of {n} integers, got {v!r}")
    return tuple(x % p for x in v)


def _terms(poly, n: int, p: int, where: str) -> tuple[tuple[tuple[int, ...], int], ...]:
    if not isinstance(poly, list) or not poly:
        raise ScenarioError(f"{where}: a polynomial is a non-empty list of [exponents, coefficient] pairs")
    out = []
    for k, term in enumerate(poly):
        if not (isinstance(term, list) and len(term) == 2 and isinstance(term[1], int)):
            raise ScenarioError(f"{where}[{k}]: expected [exponents, coefficient], got {term!r}")
        exps = term[0]
        if not isinstance(exps, list) or len(exps) != n or not all(isinstance(e, int) and e >= 0 for e in exps):
            raise ScenarioError(f"{where}[{k}]: exponents must be {n} non-negative integers, got {exps!r}")
        out.append((tuple(exps), term[1] % p))
    f = Polynomial(dict(_merge(out, p)), n, p)
    if f.is_zero():
        raise ScenarioError(f"{where}: polynomial is zero mod {p}")
    if not f.is_homogeneous() or f.degree < 1:
        raise ScenarioError(f"{where}: polynomial must be homogeneous of degree >= 1")
    return tuple(sorted(f.items()))


def _merge(terms, p):
    acc: dict = {}
    for m, c in terms:
        acc[m] = (acc.get(m, 0) + c) % p
    return acc.items()


def validate(data: dict, source: str = "<scenario>") -> Scenario:
    unknown = sorted(set(data) - KNOWN_KEYS)
    if unknown:
        raise ScenarioError(f"{source}: unknown field(s) {', '.join(unknown)}")
    p = _int(data, "p", source, 2)
    if not is_prime(p):
        raise ScenarioError(f"{source}: field 'p' must be prime, got {p}")
    n = _int(data, "n", source, 1)

    gens = data.get("generators")
    if not isinstance(gens, list):
        raise ScenarioError(f"{source}: field 'generators' must be a list of {n}x{n} matrices")
    matrices = []
    for i, g in enumerate(gens):
        where = f"{source}: generators[{i}]"
        if not isinstance(g, list) or len(g) != n:
            raise ScenarioError(f"{where}: matrix must have {n} rows")
        m = as_matrix([_vector(row, n, p, f"{where} row {r}") for r, row in enumerate(g)], p)
        if not is_invertible(m, p):
            raise ScenarioError(f"{where}: matrix is singular mod {p}")
        matrices.append(m)

    cutoff = _int(data, "cutoff", source, 1, DEFAULT_CUTOFF)
    depth_cutoff = _int(data, "depth_cutoff", source, 1) if "depth_cutoff" in data else None
    seed = _int(data, "seed", source, 0, 0)
    lifting_trials = _int(data, "lifting_trials", source, 0, 0)

    hsop = data.get("hsop", "auto")
    if hsop not in ("auto", "dickson"):
        raise ScenarioError(f"{source}: field 'hsop' must be 'auto' or 'dickson', got {hsop!r}")
    grading = data.get("grading", "algebraic")
    if grading not in ("algebraic", "topological"):
        raise ScenarioError(f"{source}: field 'grading' must be 'algebraic' or 'topological', got {grading!r}")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ScenarioError(f"{source}: field 'name' must be a string")

    theorems = data.get("theorems", ["duflot", "es"])
    if not isinstance(theorems, list) or any(t not in THEOREMS for t in theorems):
        raise ScenarioError(f"{source}: field 'theorems' must be a list drawn from {list(THEOREMS)}, got {theorems!r}")

    carlson = data.get("carlson", [1])
    if not isinstance(carlson, list) or not all(isinstance(s, int) and not isinstance(s, bool) for s in carlson):
        raise ScenarioError(f"{source}: field 'carlson' must be a list of integers")
    for s in carlson:
        if not 0 <= s <= n:
            raise ScenarioError(f"{source}: field 'carlson': s={s} is outside 0..n={n}")

    sequences = []
    for i, spec in enumerate(data.get("sequences", [])):
        where = f"{source}: sequences[{i}]"
        if not isinstance(spec, dict) or set(spec) - {"polynomials", "subspace"}:
            raise ScenarioError(f"{where}: expected a table with 'polynomials' and optional 'subspace'")
        polys = spec.get("polynomials")
        if not isinstance(polys, list) or not polys:
            raise ScenarioError(f"{where}.polynomials: must be a non-empty list of polynomials")
        terms = tuple(_terms(poly, n, p, f"{where}.polynomials[{k}]") for k, poly in enumerate(polys))
        sub = spec.get("subspace")
        basis = None
        if sub is not None:
            if not isinstance(sub, list):
                raise ScenarioError(f"{where}.subspace: must be a list of basis vectors")
            basis = tuple(_vector(v, n, p, f"{where}.subspace[{k}]") for k, v in enumerate(sub))
        sequences.append(SequenceSpec(terms, basis))

    subspaces = []
    for i, sub in enumerate(data.get("subspaces", [])):
        where = f"{source}: subspaces[{i}]"
        if not isinstance(sub, list):
            raise ScenarioError(f"{where}: must be a list of basis vectors")
        subspaces.append(tuple(_vector(v, n, p, f"{where}[{k}]") for k, v in enumerate(sub)))

    return Scenario(
        p=p,
        n=n,
        generators=tuple(matrices),
        name=name,
        cutoff=cutoff,
        depth_cutoff=depth_cutoff,
        seed=seed,
        hsop=hsop,
        grading=grading,
        theorems=tuple(theorems),
        carlson=tuple(carlson),
        lifting_trials=lifting_trials,
        sequences=tuple(sequences),
        subspaces=tuple(subspaces),
    )
