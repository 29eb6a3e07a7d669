"""Fixture files: JSON documents describing the groups every command runs on.

A fixture is ``{"schema_version", "kind", "name", "payload", "checksum"}``
where ``checksum`` is the sha256 of the canonical encoding of ``payload``.
Shipped fixtures live in ``hocohom/data``; ``HOCOHOM_FIXTURES`` points the
loader at another directory.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError
from .finite import FiniteGroup, ModuleRep, alternating5, cyclic, group_violations, symmetric3
from .fuchsian import FuchsianSignature
from .linalg import QQ, PrimeField
from .modular import CuspForm, det, naive_eta_product
from .periods import GroupFixture, IntegrationConfig, group_fixture_violations
from .report import dumps

SCHEMA_VERSION = 1
KINDS = ("fuchsian", "finite", "modular")
ENV_ROOT = "HOCOHOM_FIXTURES"

FUCHSIAN_NAMES = ("g1s1", "g1s2", "g2s1", "g0s3")
FINITE_NAMES = ("s3", "z2", "z3", "z5", "a5")
MODULAR_NAMES = ("gamma0_11",)


def default_root() -> Path:
    env = os.environ.get(ENV_ROOT)
    return Path(env) if env else Path(__file__).resolve().parent / "data"


def checksum(payload: dict) -> str:
    return "sha256:" + hashlib.sha256(dumps(payload).encode()).hexdigest()


@dataclass
class Fixture:
    kind: str
    name: str
    payload: dict
    source: str

    # typed views, built on demand
    def signature(self) -> FuchsianSignature:
        return FuchsianSignature(self.payload["g"], self.payload["s"])

    def group(self) -> FiniteGroup:
        p = self.payload
        return FiniteGroup(
            p["group"], tuple(tuple(r) for r in p["cayley"]), tuple(p["generators"]), frozenset(p["sigma"])
        )

    def field(self):
        p = self.payload["field"]
        return QQ if p == 0 else PrimeField(p)

    def module(self) -> ModuleRep:
        gp, fld = self.group(), self.field()
        mod = self.payload["module"]
        if mod["type"] == "regular":
            return ModuleRep.regular(gp, fld)
        if mod["type"] == "trivial":
            return ModuleRep.trivial(gp, fld, mod.get("dim", 1))
        mats = {int(k): v for k, v in mod["matrices"].items()}
        return ModuleRep(gp, fld, mats)

    def group_fixture(self) -> GroupFixture:
        p = self.payload
        gens = tuple((g["name"], _matrix(g["matrix"])) for g in p["generators"])
        cusps = tuple((c["generator"], c["label"]) for c in p["cusps"])
        scaling = tuple((c["label"], _real_matrix(c["scaling"])) for c in p["cusps"])
        return GroupFixture(self.name, p["level"], p["g"], p["s"], gens, cusps, scaling)

    def cusp_form(self, cfg: IntegrationConfig = IntegrationConfig()) -> CuspForm:
        form = self.payload["form"]
        return CuspForm.eta_product(
            [tuple(x) for x in form["eta_product"]], self.payload["level"], cfg.min_im, cfg.tail_tol,
            form.get("fricke_sign"),
        )


def _matrix(m):
    return ((int(m[0][0]), int(m[0][1])), (int(m[1][0]), int(m[1][1])))


def _real_matrix(m):
    return ((float(m[0][0]), float(m[0][1])), (float(m[1][0]), float(m[1][1])))


# ---------------------------------------------------------------- validation


def _fuchsian_violations(p: dict) -> list[str]:
    problems = []
    g, s = p.get("g"), p.get("s")
    if not isinstance(g, int) or not isinstance(s, int):
        return ["payload needs integer g and s"]
    try:
        sig = FuchsianSignature(g, s)
    except InputError as e:
        return [str(e)]
    words = p.get("parabolic_words")
    if words is not None:
        expected = [w.signed() for w in sig.parabolic_words()]
        if words != expected:
            problems.append(f"parabolic_words {words} do not match the relation; expected {expected}")
    if p.get("r") not in (None, sig.r):
        problems.append(f"r = {p.get('r')} but 2g + s - 1 = {sig.r}")
    if sig.relator().letters:
        problems.append("relator does not reduce to the identity")
    return problems


def _finite_violations(p: dict) -> list[str]:
    problems = []
    for key in ("group", "cayley", "generators", "sigma", "field", "module"):
        if key not in p:
            problems.append(f"missing field {key!r}")
    if problems:
        return problems
    cayley = [list(r) for r in p["cayley"]]
    problems += group_violations(cayley, list(p["generators"]), set(p["sigma"]))
    fld = p["field"]
    if fld != 0:
        try:
            PrimeField(fld)
        except InputError as e:
            problems.append(str(e))
    mod = p["module"]
    if mod.get("type") not in ("regular", "trivial", "matrices"):
        problems.append(f"module type {mod.get('type')!r} is not regular, trivial or matrices")
    return problems


def _modular_violations(p: dict) -> list[str]:
    problems = []
    for key in ("level", "g", "s", "generators", "cusps", "form"):
        if key not in p:
            problems.append(f"missing field {key!r}")
    if problems:
        return problems
    for gdef in p["generators"]:
        m = gdef["matrix"]
        d = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if d != 1:
            problems.append(f"matrix {gdef['name']} = {m} has determinant {d}")
    for c in p["cusps"]:
        if abs(det(c["scaling"]) - 1) > 1e-12:
            problems.append(f"scaling matrix of cusp {c['label']} has determinant {det(c['scaling'])}")
    if problems:
        return problems
    try:
        gens = tuple((g["name"], _matrix(g["matrix"])) for g in p["generators"])
        cusps = tuple((c["generator"], c["label"]) for c in p["cusps"])
        problems += group_fixture_violations(p["level"], p["g"], p["s"], gens, cusps)
    except (KeyError, TypeError, ValueError, IndexError) as e:
        problems.append(f"malformed generator data: {e}")
    form = p["form"]
    head = form.get("a_head", [])
    exps = [tuple(x) for x in form.get("eta_product", [])]
    if head and exps:
        ref = naive_eta_product(exps, len(head))
        if ref != head:
            problems.append(f"a_head {head} disagrees with the eta product expansion {ref}")
    return problems


_VALIDATORS = {"fuchsian": _fuchsian_violations, "finite": _finite_violations, "modular": _modular_violations}


def validate(doc: dict) -> list[str]:
    problems = []
    if not isinstance(doc, dict):
        return ["fixture must be a JSON object"]
    if doc.get("schema_version") != SCHEMA_VERSION:
        problems.append(f"unsupported schema_version {doc.get('schema_version')!r}; expected {SCHEMA_VERSION}")
    kind = doc.get("kind")
    if kind not in KINDS:
        problems.append(f"kind {kind!r} not one of {', '.join(KINDS)}")
    if not isinstance(doc.get("name"), str):
        problems.append("name must be a string")
    payload = doc.get("payload")
    if not isinstance(payload, dict):
        problems.append("payload must be an object")
        return problems
    if doc.get("checksum") != checksum(payload):
        problems.append(f"checksum mismatch: file has {doc.get('checksum')!r}, payload hashes to {checksum(payload)}")
    if kind in _VALIDATORS:
        problems += _VALIDATORS[kind](payload)
    return problems


def resolve(name_or_path: str, root: Path | None = None) -> Path:
    p = Path(name_or_path)
    if p.suffix == ".json" or p.exists():
        if not p.exists():
            raise InputError(f"fixture file {p} does not exist")
        return p
    root = root or default_root()
    cand = root / f"{name_or_path}.json"
    if not cand.exists():
        raise InputError(f"no fixture named {name_or_path!r} under {root}")
    return cand


def load_fixture(name_or_path: str, root: Path | None = None) -> Fixture:
    path = resolve(name_or_path, root)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: not valid JSON ({e})") from None
    problems = validate(doc)
    if problems:
        raise InputError(f"{path}: " + "; ".join(problems))
    return Fixture(doc["kind"], doc["name"], doc["payload"], str(path))


def load_kind(kind: str, names, root: Path | None = None) -> list[Fixture]:
    out = []
    for n in names:
        fx = load_fixture(n, root)
        if fx.kind != kind:
            raise InputError(f"fixture {n} has kind {fx.kind}, expected {kind}")
        out.append(fx)
    return out


# ---------------------------------------------------------------- shipped data


def _doc(kind: str, name: str, payload: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "name": name,
        "payload": payload,
        "checksum": checksum(payload),
    }


def _finite_payload(gp: FiniteGroup, field: int, module: dict, perfect: bool) -> dict:
    return {
        "group": gp.name,
        "order": gp.order,
        "cayley": [list(r) for r in gp.cayley],
        "generators": list(gp.generators),
        "sigma": sorted(gp.sigma),
        "field": field,
        "module": module,
        "perfect": perfect,
    }


def shipped_documents() -> dict[str, dict]:
    """Every fixture the package ships, built from first principles."""
    docs = {}
    for g, s in ((1, 1), (1, 2), (2, 1), (0, 3)):
        sig = FuchsianSignature(g, s)
        payload = {"g": g, "s": s, "r": sig.r, "parabolic_words": [w.signed() for w in sig.parabolic_words()]}
        docs[f"g{g}s{s}"] = _doc("fuchsian", f"g{g}s{s}", payload)
    finite = {
        "s3": (symmetric3(), 0, {"type": "regular"}, False),
        "z2": (cyclic(2), 2, {"type": "regular"}, False),
        "z3": (cyclic(3), 0, {"type": "trivial", "dim": 1}, False),
        "z5": (cyclic(5), 0, {"type": "regular"}, False),
        "a5": (alternating5(), 0, {"type": "trivial", "dim": 1}, True),
    }
    for name, (gp, fld, mod, perfect) in finite.items():
        docs[name] = _doc("finite", name, _finite_payload(gp, fld, mod, perfect))
    root11 = math.sqrt(11)
    exps = [[1, 2], [11, 2]]
    payload = {
        "level": 11,
        "g": 1,
        "s": 2,
        "generators": [
            {"name": "g1", "matrix": [[-3, 2], [-11, 7]]},
            {"name": "g2", "matrix": [[8, -3], [11, -4]]},
            {"name": "p1", "matrix": [[1, 1], [0, 1]]},
            {"name": "p2", "matrix": [[1, 0], [-11, 1]]},
        ],
        "cusps": [
            {"generator": "p1", "label": "inf", "scaling": [[1.0, 0.0], [0.0, 1.0]]},
            {"generator": "p2", "label": "0", "scaling": [[0.0, -1.0 / root11], [root11, 0.0]]},
        ],
        "form": {
            "weight": 2,
            "eta_product": exps,
            "fricke_sign": -1,
            "a_head": naive_eta_product([tuple(x) for x in exps], 12),
        },
    }
    docs["gamma0_11"] = _doc("modular", "gamma0_11", payload)
    return docs


def write_shipped(root: Path | None = None) -> list[Path]:
    root = root or Path(__file__).resolve().parent / "data"
    root.mkdir(parents=True, exist_ok=True)
    out = []
    for name, doc in shipped_documents().items():
        path = root / f"{name}.json"
        path.write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n", encoding="utf-8")
        out.append(path)
    return out
