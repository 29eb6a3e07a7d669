"""One runner per CLI command; each returns a :class:`Report`."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor

from . import dims as D
from . import finite as F
from .fixtures import FINITE_NAMES, FUCHSIAN_NAMES, MODULAR_NAMES, load_kind
from .fuchsian import build_jq, h1_dim_n0, h1_par_dim_n0, parabolic_class_rank
from .periods import IntegrationConfig, verify_suite
from .report import FAIL, INFO, PASS, Record, Report
from .surface import (
    admissible_basis,
    admissible_spans_slice,
    n_by_enumeration,
    relator_ideal_graded_dim,
    require_feasible,
)

DIMS_GRID = ((1, 1), (1, 2), (2, 1), (0, 3), (1, 0), (2, 0), (3, 0))
DIMS_N = (0, 2, 4)


def _map(fn, items, threads: int):
    items = list(items)
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# ---------------------------------------------------------------- dims


def n_triple(g: int, q: int) -> tuple[int, int | None, int]:
    """(recursion, closed form or None when g = 0, enumeration)."""
    closed = None
    if g >= 1:
        c = D.n_g_closed_form(g, q)
        if c.b != 0:
            raise AssertionError(f"closed form left an irrational part at g={g}, q={q}")
        closed = c.a
    return D.n_g(g, q), closed, n_by_enumeration(g, q)


def run_dims(config: dict) -> Report:
    rep = Report("dims", config)
    qmax = config.get("qmax") or 4
    if config.get("g") is not None:
        grid = [(config["g"], config.get("s") or 0)]
        ns = [config.get("n") or 0]
    else:
        grid, ns = list(DIMS_GRID), list(DIMS_N)

    for g in sorted({g for g, _ in grid} | ({0, 1, 2, 3} if config.get("g") is None else set())):
        for q in range(0, max(qmax, 6 if config.get("g") is None else qmax) + 1):
            rec, closed, enum = n_triple(g, q)
            values = {"recursion": rec, "closed_form": closed, "enumeration": enum}
            ok = rec == enum and (closed is None or closed == rec)
            rep.records.append(Record(
                f"N_triple g={g} q={q}", "N_g(q+1) = 2g N_g(q) - N_g(q-1); N_g(q) = alpha^q + ... + alpha^-q",
                enum, values, None, PASS if ok else FAIL,
            ))
    rows = []
    for (g, s), n in itertools.product(grid, ns):
        for q in range(1, qmax + 1):
            row = {"g": g, "s": s, "n": n, "q": q, "N": D.n_g(g, q), "barN": D.bar_n(g, q),
                   "h1": D.dim_h1(g, s, n, q), "h1_par": D.dim_h1_par(g, s, n, q)}
            aux = D.dim_aux(g, s, n, q)
            row["cusp_classical"] = aux.dim_cusp_classical
            if aux.dim_ext2_s0 is not None:
                row["ext2"] = aux.dim_ext2_s0
            rows.append(row)
        for chk in D.sequence_consistency(g, s, n, qmax):
            rep.records.append(Record(
                f"sequence({chk.branch}) g={g} s={s} n={n} q={chk.q}",
                "alternating sum of the exact sequence vanishes",
                0, chk.alternating_sum, None, PASS if chk.ok else FAIL, {"terms": list(chk.terms)},
            ))
    rep.tables["dims"] = rows
    return rep


# ---------------------------------------------------------------- surface


def run_surface(config: dict) -> Report:
    rep = Report("surface", config)
    qmax = config.get("qmax") or 4
    genera = [config["g"]] if config.get("g") is not None else [1, 2]
    for g in genera:
        require_feasible(g, qmax)
    rows = []
    for g in genera:
        for q in range(1, qmax + 1):
            oracle = relator_ideal_graded_dim(g, q)
            basis = len(admissible_basis(g, q))
            rep.records.append(Record.equality(
                f"graded_dim g={g} q={q}", "dim I^q/I^(q+1) = N_g(q)", D.n_g(g, q), oracle,
            ))
            rep.records.append(Record.equality(
                f"admissible_count g={g} q={q}", "admissible tuples avoid adjacent (1,2)", oracle, basis,
            ))
            spans = admissible_spans_slice(g, q)
            rep.records.append(Record.equality(
                f"admissible_spans g={g} q={q}", "admissible monomials span I^q/I^(q+1)", True, spans,
            ))
            rows.append({"g": g, "q": q, "oracle": oracle, "admissible": basis, "N": D.n_g(g, q)})
    rep.tables["surface"] = rows
    return rep


# ---------------------------------------------------------------- fuchsian


def _fuchsian_one(args):
    fx, qmax = args
    sig = fx.signature()
    g, s = sig.g, sig.s
    records, rows = [], []
    for q in range(1, qmax + 1):
        m = build_jq(sig, q)
        par = h1_par_dim_n0(sig, q)
        h1 = h1_dim_n0(sig, q)
        rank = parabolic_class_rank(sig, q)
        records.append(Record.equality(
            f"{fx.name} dim J_q/J_q+1 q={q}", "dim J_q/J_(q+1) = N_g(q)", D.n_g(g, q), par))
        records.append(Record.equality(
            f"{fx.name} dim J_q/IJ_q q={q}", "dim J_q/IJ_q = barN_g(q-1)(2g+s-2)+1", D.dim_h1(g, s, 0, q), h1))
        records.append(Record.equality(
            f"{fx.name} containments q={q}", "IJ_q and J_(q+1) lie in J_q", True,
            m.i_jq_image.issubspace(m.jq_image) and m.jq_next_image.issubspace(m.jq_image)))
        bounded = rank <= s and rank <= h1
        records.append(Record(
            f"{fx.name} parabolic_class_rank q={q}", "classes of p_j - 1 in J_q/IJ_q (at most s)",
            f"<= min(s, dim J_q/IJ_q) = {min(s, h1)}", rank, None, PASS if bounded else FAIL))
        if q < qmax:
            nxt = h1_dim_n0(sig, q + 1)
            N = D.n_g(g, q)
            records.append(Record.equality(
                f"{fx.name} h1 step q={q}", "h1(q+1) - h1(q) = N_g(q)(2g+s-1) - N_g(q)",
                N * (2 * g + s - 1) - N, nxt - h1))
        rows.append({"fixture": fx.name, "g": g, "s": s, "q": q, "J_q/J_q+1": par, "J_q/IJ_q": h1,
                     "parabolic_rank": rank, "dim J_q": m.jq_image.dim})
    return records, rows


def run_fuchsian(config: dict, fixtures=None) -> Report:
    rep = Report("fuchsian", config)
    qmax = config.get("qmax") or 3
    fixtures = fixtures or load_kind("fuchsian", FUCHSIAN_NAMES)
    rows = []
    for records, r in _map(_fuchsian_one, [(fx, qmax) for fx in fixtures], config.get("threads") or 1):
        rep.records.extend(records)
        rows.extend(r)
    rep.tables["fuchsian"] = rows
    return rep


# ---------------------------------------------------------------- finite


def _finite_one(args):
    fx, qmax = args
    gp, fld, mod = fx.group(), fx.field(), fx.module()
    records = []
    tower = F.ideal_tower(gp, fld, qmax)
    dims = [t.dim for t in tower]
    nested = all(tower[i + 1].issubspace(tower[i]) for i in range(len(tower) - 1))
    records.append(Record(f"{fx.name} ideal tower", "J_(q+1) lies in J_q", "descending", dims, None,
                          PASS if nested else FAIL))
    rpt = F.stabilization_report(mod, qmax)
    direct = [F.hq0_direct(mod, q).dim for q in range(1, qmax + 1)]
    records.append(Record.equality(f"{fx.name} H0 tower vs annihilator",
                                   "H^0_q = V^{J_q} by two routes", list(rpt.dims), direct))
    ascending = all(a <= b for a, b in zip(rpt.dims, rpt.dims[1:]))
    records.append(Record(f"{fx.name} H0 ascending", "H^0_q lies in H^0_(q+1)", "ascending", list(rpt.dims),
                          None, PASS if ascending else FAIL))
    if rpt.char_divides_order:
        records.append(Record(f"{fx.name} stabilization", "growth permitted when char divides |G|",
                              "any", rpt.verdict, None, INFO, {"growth_at": rpt.growth_at}))
    else:
        records.append(Record.equality(f"{fx.name} stabilization",
                                       "H^0_q constant when |G| is invertible", "STABLE", rpt.verdict,
                                       dims=list(rpt.dims)))
    perfect = F.perfect_check(gp)
    records.append(Record.equality(
        f"{fx.name} perfect", "I^2 = I exactly for perfect groups", fx.payload.get("perfect", False), perfect.perfect,
        dims_q=list(perfect.dims_q), dims_mod_p={str(k): list(v) for k, v in perfect.dims_mod_p.items()}))
    square = F.power_tower(gp, fld, 2)[1]
    pairs = list(F.all_pairs(gp))
    if len(pairs) > 400:
        pairs = pairs[:: len(pairs) // 400 + 1]
    ok = all(F.commutator_in_square(gp, a, b, fld, square) for a, b in pairs)
    records.append(Record.equality(f"{fx.name} commutators in I^2", "ghg^-1h^-1 - 1 lies in I^2", True, ok,
                                   pairs_checked=len(pairs)))
    row = {"fixture": fx.name, "order": gp.order, "field": fld.name, "J_dims": dims, "H0_dims": list(rpt.dims),
           "verdict": rpt.verdict, "I_dim": perfect.dims_q[0], "I2_dim": perfect.dims_q[1]}
    return records, [row]


def run_finite(config: dict, fixtures=None) -> Report:
    rep = Report("finite", config)
    qmax = config.get("qmax") or 4
    fixtures = fixtures or load_kind("finite", FINITE_NAMES)
    rows = []
    for records, r in _map(_finite_one, [(fx, qmax) for fx in fixtures], config.get("threads") or 1):
        rep.records.extend(records)
        rows.extend(r)
    rep.tables["finite"] = rows
    return rep


# ---------------------------------------------------------------- es


def integration_config(config: dict) -> IntegrationConfig:
    base = IntegrationConfig()
    kw = {}
    for key in ("tol", "max_depth", "min_im", "tail_tol"):
        if config.get(key) is not None:
            kw[key] = config[key]
    if config.get("quad_order") is not None:
        kw["order"] = config["quad_order"]
    return IntegrationConfig(**{**base.__dict__, **kw})


def run_es(config: dict, fixtures=None) -> Report:
    rep = Report("es", config)
    q = config.get("order") or 2
    cfg = integration_config(config)
    fixtures = fixtures or load_kind("modular", MODULAR_NAMES)
    for fx in fixtures:
        group = fx.group_fixture()
        form = fx.cusp_form(cfg)
        result = verify_suite(group, form, q, cfg)
        for c in result.checks:
            residual = c.computed if isinstance(c.computed, float) else None
            rep.records.append(Record(f"{fx.name} {c.name}", c.anchor, c.expected, c.computed, residual,
                                      PASS if c.passed else FAIL, c.detail))
        for t in result.tables:
            rep.tables.setdefault("cocycles", []).extend(
                {"fixture": fx.name, "form": t.form, "order": t.order, "base_point": [t.base_point.real, t.base_point.imag],
                 "generator": k, "value": v, "parabolic": k in t.parabolic}
                for k, v in sorted(t.entries.items())
            )
    return rep


def run_all(config: dict) -> Report:
    rep = Report("all", config)
    for fn in (run_dims, run_surface, run_fuchsian, run_finite, run_es):
        rep.extend(fn(dict(config, g=None, s=None, n=None)))
    return rep


RUNNERS = {
    "dims": run_dims,
    "surface": run_surface,
    "fuchsian": run_fuchsian,
    "finite": run_finite,
    "es": run_es,
    "all": run_all,
}
