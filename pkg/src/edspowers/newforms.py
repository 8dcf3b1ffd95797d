"""Newform eigenvalue data: JSON ingestion, validation, caching and genus of X_0(N).

Records hold Hecke eigenvalues a_p and character values chi(p) exactly, as
coordinate vectors in the power basis of the coefficient field.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .arith import NFElem, NumberField, factorint, format_rational, parse_rational, primes_up_to

PACKAGE_DATA = Path(__file__).resolve().parent / "data" / "newforms"


class NewformDataError(ValueError):
    pass


def data_dir() -> Path:
    """Fixture root: $EDS_DATA_DIR if set, else the bundled data directory."""
    env = os.environ.get("EDS_DATA_DIR")
    return Path(env) if env else PACKAGE_DATA


@dataclass(frozen=True)
class Character:
    modulus: int = 1
    order: int = 1
    conrey: int = 1
    values: dict = field(default_factory=dict)

    @property
    def trivial(self) -> bool:
        return self.order == 1

    def value(self, p: int, K: NumberField) -> Optional[NFElem]:
        if self.trivial:
            return K.one()
        if self.modulus % p == 0:
            return K.zero()
        return self.values.get(p)


@dataclass(frozen=True)
class NewformRecord:
    level: int
    field: NumberField
    ap: dict
    character: Character = Character()
    label: str = ""
    cm: bool = False
    weight: int = 2

    @property
    def degree(self) -> int:
        return self.field.degree

    @property
    def rational(self) -> bool:
        return self.field.degree == 1

    def a(self, p: int) -> NFElem:
        try:
            return self.ap[p]
        except KeyError:
            raise KeyError(f"{self.label}: no a_p stored for p = {p}") from None

    def eps(self, p: int) -> Optional[NFElem]:
        return self.character.value(p, self.field)

    def __eq__(self, other):
        if not isinstance(other, NewformRecord):
            return NotImplemented
        return (self.level, self.field, self.ap, self.character, self.label, self.cm) == \
            (other.level, other.field, other.ap, other.character, other.label, other.cm)

    def __hash__(self):
        return hash((self.level, self.label))


@dataclass
class NewformSet:
    records: list
    provenance: str = ""

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def levels(self) -> set:
        return {r.level for r in self.records}

    def __add__(self, other: "NewformSet") -> "NewformSet":
        return NewformSet(self.records + other.records, f"{self.provenance}+{other.provenance}")


def _vec(K: NumberField, raw, what: str) -> NFElem:
    if isinstance(raw, (int, str)):
        raw = [raw]
    if len(raw) > K.degree:
        raise NewformDataError(f"{what}: {len(raw)} coordinates for a degree {K.degree} field")
    return K([parse_rational(str(c)) for c in raw])


def _conjugate_size(ap: NFElem, exact: bool) -> float:
    import numpy as np
    if ap.is_rational():
        return abs(float(ap.c[0])) if ap.c else 0.0
    if not exact:
        return float(max(abs(ap.embeddings())))
    # roots of the exact characteristic polynomial avoid the cancellation that
    # large power-basis coordinates cause in direct evaluation
    return float(max(abs(np.roots([float(c) for c in reversed(ap.charpoly())]))))


def _check_hasse(rec: NewformRecord) -> None:
    for p, ap in rec.ap.items():
        bound = 2 * math.sqrt(p) * (1 + 1e-6) + 1e-6
        worst = _conjugate_size(ap, exact=False)
        if worst > bound:
            worst = _conjugate_size(ap, exact=True)
        if worst > bound:
            raise NewformDataError(f"{rec.label}: a_{p} violates the Hasse bound ({worst:.3f} > {bound:.3f})")


def _check_character(rec: NewformRecord) -> None:
    o = rec.character.order
    for p, v in rec.character.values.items():
        if v ** o != 1:
            raise NewformDataError(f"{rec.label}: chi({p}) is not a root of unity of order dividing {o}")


def record_from_json(d: dict) -> NewformRecord:
    for key in ("level", "field_poly", "ap"):
        if key not in d:
            raise NewformDataError(f"missing key {key!r}")
    if d.get("weight", 2) != 2:
        raise NewformDataError("only weight 2 is supported")
    poly = [parse_rational(str(c)) for c in d["field_poly"]]
    if not poly or poly[-1] != 1:
        raise NewformDataError("field_poly must be monic")
    if any(c.denominator != 1 for c in poly):
        raise NewformDataError("field_poly must have integer coefficients")
    K = NumberField(poly)
    label = d.get("labels", d.get("label", ""))
    ap = {int(p): _vec(K, v, f"{label} a_{p}") for p, v in d["ap"].items()}
    ch = d.get("character") or {}
    values = {int(p): _vec(K, v, f"{label} chi({p})") for p, v in (ch.get("values") or {}).items()}
    character = Character(int(ch.get("modulus", 1)), int(ch.get("order", 1)), int(ch.get("conrey", 1)), values)
    rec = NewformRecord(int(d["level"]), K, ap, character, str(label), bool(d.get("cm", False)))
    _check_hasse(rec)
    _check_character(rec)
    return rec


def _coords(x: NFElem) -> list:
    return [format_rational(c) for c in x.coeffs()]


def record_to_json(rec: NewformRecord) -> dict:
    ch = rec.character
    return {
        "level": rec.level,
        "weight": rec.weight,
        "character": {"modulus": ch.modulus, "order": ch.order, "conrey": ch.conrey,
                      "values": {str(p): _coords(v) for p, v in sorted(ch.values.items())}},
        "field_poly": [format_rational(c) for c in rec.field.poly],
        "ap": {str(p): _coords(v) for p, v in sorted(rec.ap.items())},
        "labels": rec.label,
        "cm": rec.cm,
    }


def load_newforms(path) -> NewformSet:
    path = Path(path)
    text = path.read_text(encoding="utf-8").strip()
    if not text:
        return NewformSet([], str(path))
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise NewformDataError(f"{path}: invalid JSON ({e})") from None
    if isinstance(raw, dict):
        raw = [raw]
    if not isinstance(raw, list):
        raise NewformDataError(f"{path}: expected a record or a list of records")
    return NewformSet([record_from_json(r) for r in raw], str(path))


def save_newforms(ns: NewformSet, path) -> None:
    Path(path).write_text(json.dumps([record_to_json(r) for r in ns.records], separators=(",", ":")),
                          encoding="utf-8")


def fixture_name(level: int, char_modulus: int = 1, conrey: int = 1) -> str:
    return f"level_{level}.json" if conrey == 1 else f"level_{level}_chi{char_modulus}_{conrey}.json"


def load_level(level: int, char_modulus: int = 1, conrey: int = 1, root=None) -> Optional[NewformSet]:
    """Bundled (or $EDS_DATA_DIR) fixture for a space, or None if absent."""
    path = Path(root or data_dir()) / fixture_name(level, char_modulus, conrey)
    return load_newforms(path) if path.exists() else None


# ---------------------------------------------------------------- genus of X_0(N)


def genus_x0(N: int) -> int:
    """Genus of X_0(N) from the index, elliptic points and cusps."""
    if N < 1:
        raise ValueError("N must be positive")
    f = factorint(N)
    mu = N
    for p in f:
        mu = mu * (p + 1) // p
    nu2 = 0 if N % 4 == 0 else math.prod(1 + _kron(-4, p) for p in f)
    nu3 = 0 if N % 9 == 0 else math.prod(1 + _kron(-3, p) for p in f)
    cusps = sum(_phi(math.gcd(d, N // d)) for d in _divisors(N))
    return 1 + (mu - 3 * nu2 - 4 * nu3 - 6 * cusps) // 12


def _kron(d: int, p: int) -> int:
    from .arith import kronecker
    return kronecker(d, p)


def _phi(n: int) -> int:
    r = n
    for p in factorint(n):
        r -= r // p
    return r


def _divisors(n: int) -> list:
    out = [1]
    for p, e in factorint(n).items():
        out = [d * p ** k for d in out for k in range(e + 1)]
    return out


# ---------------------------------------------------------------- remote source

LMFDB_API = "https://www.lmfdb.org/api"


def _get_json(url: str, timeout: float = 30.0):
    from urllib.request import urlopen
    with urlopen(url, timeout=timeout) as resp:
        return json.loads(resp.read().decode("utf-8"))


def _group_logs(N: int, gens: list) -> dict:
    """Exponent vectors of every unit mod N in terms of the given generators."""
    logs = {1 % N: (0,) * len(gens)}
    frontier = [1 % N]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = x * g % N
                if y not in logs:
                    e = list(logs[x])
                    e[i] += 1
                    logs[y] = tuple(e)
                    nxt.append(y)
        frontier = nxt
    return logs


def convert_lmfdb(entry: dict, level: int, char_modulus: int, char_order: int, pmax: int = 200) -> NewformRecord:
    """Convert one mf_hecke_nf row (Hecke ring basis data) into a record."""
    poly = [int(c) for c in entry["field_poly"]]
    K = NumberField(poly)
    nums, dens = entry.get("hecke_ring_numerators"), entry.get("hecke_ring_denominators")
    if nums is None:
        basis = [K([0] * i + [1]) for i in range(K.degree)]
    else:
        basis = [K([parse_rational(str(c)) for c in n]) / int(d) for n, d in zip(nums, dens)]

    def elem(v):
        return sum((int(c) * b for c, b in zip(v, basis)), K.zero())

    primes = primes_up_to(pmax)
    ap = {p: elem(v) for p, v in zip(primes, entry["ap"])}
    values = {}
    cv = entry.get("hecke_ring_character_values")
    if cv and char_order > 1:
        gens = [int(g) for g, _ in cv]
        gvals = [elem(v) for _, v in cv]
        logs = _group_logs(char_modulus, gens)
        for p in primes:
            if char_modulus % p:
                e = logs[p % char_modulus]
                values[p] = _prod(g ** k for g, k in zip(gvals, e)) if e else K.one()
    character = Character(char_modulus, char_order, 1 if char_order == 1 else -1, values)
    return NewformRecord(level, K, ap, character, entry.get("label", ""), bool(entry.get("is_cm", False)))


def _prod(it):
    it = iter(it)
    acc = next(it)
    for x in it:
        acc = acc * x
    return acc


def fetch_newforms(level: int, char_orbit: str = "a", cache_dir=None, getter=_get_json,
                   char_modulus: int = 1, char_order: int = 1) -> NewformSet:
    """Download the weight 2 newforms of a space and cache them as a fixture file.

    `char_orbit` is the database's character orbit letter ("a" = trivial)."""
    space = f"{level}.2.{char_orbit}"
    url = f"{LMFDB_API}/mf_hecke_nf/?label=~^{space}\\.&_format=json&_fields=label,field_poly,hecke_ring_numerators," \
          "hecke_ring_denominators,ap,hecke_ring_character_values,is_cm"
    try:
        payload = getter(url)
    except Exception as e:
        raise NewformDataError(f"could not fetch {space} ({e}); use the bundled fixtures "
                               f"or point EDS_DATA_DIR at a fixture directory") from None
    rows = payload.get("data", []) if isinstance(payload, dict) else []
    if not rows:
        raise NewformDataError(f"space {space} not found in the remote database; use offline fixtures")
    records = [convert_lmfdb(r, level, char_modulus, char_order) for r in rows]
    for r in records:
        _check_hasse(r)
        _check_character(r)
    ns = NewformSet(records, url)
    out = Path(cache_dir or data_dir())
    out.mkdir(parents=True, exist_ok=True)
    conrey = 1 if char_order == 1 else char_orbit
    save_newforms(ns, out / (f"level_{level}.json" if conrey == 1 else f"level_{level}_{char_orbit}.json"))
    return ns


def _power_signature(f, k: int, primes) -> tuple:
    return tuple(tuple((f.a(p) ** k).charpoly()) for p in primes)


def twists_of(base, candidates, order: int = 4, primes=None) -> list:
    """Candidates whose a_p^order agree (as Galois orbits) with those of some base form,
    i.e. twists of a base form by a character of order dividing `order`."""
    base, candidates = list(base), list(candidates)
    if not base or not candidates:
        return []
    levels = [f.level for f in base + candidates]
    primes = primes or [p for p in primes_up_to(199) if all(N % p for N in levels)]
    sigs = {_power_signature(f, order, primes) for f in base}
    return [g for g in candidates if _power_signature(g, order, primes) in sigs]
