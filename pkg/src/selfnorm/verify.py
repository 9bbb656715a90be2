"""Verification harness: one record per (check, instance), in a fixed order.

Each check compares a computed quantity with a predicted value or an
inequality. Construction failures become failed records instead of aborting
the run.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Iterator

import numpy as np

from . import constructors as C
from .catalog import Catalog, GroupSpec
from .census import (
    census,
    classify_small,
    formula_frob1,
    formula_frob2,
    formula_frob3,
    nilpotent_bounds,
    pgroup_bounds,
    product_lower_bound,
    relative_census,
    solvable_dl_bound,
    FormulaError,
)
from .group import DEFAULT_MAX_ORDER, Group, quotient
from .lattice import DEFAULT_MAX_SUBGROUPS, conjugacy_classes_of_subgroups, normalizer
from .structure import (
    center,
    composition_length,
    derived_length,
    derived_subgroup,
    frobenius_decomposition,
    has_normal_p_complement,
    is_abelian,
    is_subnormal,
    is_z_group,
    nilpotency_class,
    prime_divisors,
    sylow_subgroup,
)

__all__ = [
    "CHECKS",
    "CheckRecord",
    "VerificationReport",
    "frobenius_family",
    "parse_grid",
    "run_checks",
    "select_checks",
]


@dataclass(frozen=True)
class CheckRecord:
    check_id: str
    instance: str
    expected: str
    computed: str
    status: str  # "pass" or "fail"


FIELDS = ("check_id", "instance", "expected", "computed", "status")


@dataclass(frozen=True)
class VerificationReport:
    records: tuple[CheckRecord, ...]

    @property
    def passed(self) -> int:
        return sum(r.status == "pass" for r in self.records)

    @property
    def failed(self) -> int:
        return sum(r.status != "pass" for r in self.records)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FIELDS)
        for r in self.records:
            w.writerow([getattr(r, f) for f in FIELDS])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "records": [asdict(r) for r in self.records],
            "summary": {"total": len(self.records), "passed": self.passed, "failed": self.failed},
        }
        return json.dumps(doc, indent=2) + "\n"


def _rec(check: str, instance: str, expected, computed, ok: bool) -> CheckRecord:
    return CheckRecord(check, instance, str(expected), str(computed), "pass" if ok else "fail")


class _Context:
    """Builds catalog groups once and caches the per-group quantities."""

    def __init__(self, catalog: Catalog, max_order: int, max_subgroups: int):
        self.catalog = catalog
        self.max_order = max_order
        self.max_subgroups = max_subgroups
        self._groups: dict[str, Group | Exception] = {}

    def group(self, spec: GroupSpec) -> Group:
        g = self._groups.get(spec.name)
        if g is None:
            try:
                g = spec.build(self.max_order)
            except Exception as exc:  # reported as a failed record
                g = exc
            self._groups[spec.name] = g
        if isinstance(g, Exception):
            raise g
        return g

    def groups(self, check: str) -> Iterator[tuple[GroupSpec, Group | None, CheckRecord | None]]:
        for spec in self.catalog:
            try:
                yield spec, self.group(spec), None
            except Exception as exc:
                yield spec, None, _rec(check, spec.name, "constructible", f"error: {exc}", False)

    def d(self, G: Group) -> int:
        # the lattice is cached on the group itself, so this is cheap on reuse
        return census(G, self.max_subgroups).d_value


def _each_group(ctx: _Context, check: str, fn: Callable[[GroupSpec, Group], Iterable[CheckRecord]]):
    for spec, G, err in ctx.groups(check):
        if err is not None:
            yield err
            continue
        try:
            yield from fn(spec, G)
        except Exception as exc:
            yield _rec(check, spec.name, "no error", f"error: {type(exc).__name__}: {exc}", False)


# -- individual checks ------------------------------------------------------------


def _check_expectations(ctx: _Context):
    def fn(spec: GroupSpec, G: Group):
        getters = {
            "d": lambda: ctx.d(G),
            "order": lambda: G.order,
            "derived-length": lambda: derived_length(G),
            "nilpotency-class": lambda: nilpotency_class(G),
            "center-order": lambda: center(G).order,
        }
        for prop, value in spec.expected:
            got = getters[prop]()
            yield _rec("expectations", f"{spec.name}:{prop}", value, got, got == value)

    return _each_group(ctx, "expectations", fn)


WITNESSES = (
    ("A5", 4),
    ("SL2(3)", 4),
    ("S4", 7),
    ("A6", 11),
    ("PSL(2,7)", 8),
    ("PSL(2,8)", 6),
)


def _check_witness(ctx: _Context):
    for name, d in WITNESSES:
        G = C.preset(name, ctx.max_order)
        got = ctx.d(G)
        yield _rec("witness", name, f"D={d}", f"D={got}", got == d)
    G = C.dicyclic(3, ctx.max_order)
    got, z = ctx.d(G), center(G).order
    yield _rec("witness", "Dic3", "D=3,|Z|=2", f"D={got},|Z|={z}", got == 3 and z == 2)


def _check_cyclic_pgroups(ctx: _Context):
    for p in (2, 3, 5):
        for n in range(0, 5):
            G = C.cyclic(p ** (n + 1), ctx.max_order)
            got = ctx.d(G)
            yield _rec("cyclic-pgroups", f"C{p}^{n + 1}", f"D={n}", f"D={got}", got == n)


def _normal_classes(G: Group):
    return [r for r in conjugacy_classes_of_subgroups(G) if r.is_normal and 1 < r.order < G.order]


def _check_quotient_lemma(ctx: _Context):
    def fn(spec: GroupSpec, G: Group):
        dG = ctx.d(G)
        for i, rec in enumerate(_normal_classes(G)):
            N = rec.representative
            Q = quotient(G, N).quotient
            dQ = census(Q, ctx.max_subgroups).d_value
            m = dG - relative_census(G, N)
            ok = dQ <= dG - 1 and dQ <= m - 1
            yield _rec(
                "quotient-lemma",
                f"{spec.name}/N{i}[{N.order}]",
                "D(G/N)<=min(D(G)-1,m-1)",
                f"D(G/N)={dQ},D(G)={dG},m={m}",
                ok,
            )

    return _each_group(ctx, "quotient-lemma", fn)


PRODUCT_GRID = (
    ("C2", "C3"),
    ("C3", "C4"),
    ("C4", "C5"),
    ("C2", "C9"),
    ("C3", "C5"),
    ("Q8", "C3"),
    ("D4", "C5"),
    ("C4xC2", "C3"),
    ("C2", "C2"),
    ("C2", "D4"),
    ("C4", "Q8"),
    ("C3", "C3xC3"),
    ("D3", "C5"),
    ("C2", "D3"),
    ("D3", "D3"),
    ("A4", "C5"),
    ("D5", "C3"),
)


def _check_product_formula(ctx: _Context):
    for a, b in PRODUCT_GRID:
        H = C.resolve_group(a, ctx.max_order)
        K = C.resolve_group(b, ctx.max_order)
        G = C.direct_product(H, K, ctx.max_order)
        dH, dK, dG = ctx.d(H), ctx.d(K), ctx.d(G)
        bound = product_lower_bound(dH, dK)
        equality = nilpotency_class(H) is not None and nilpotency_class(K) is not None and math.gcd(H.order, K.order) == 1
        ok = dG >= bound and (dG == bound) == equality
        yield _rec(
            "product-formula",
            f"{a}x{b}",
            f"D{'=' if equality else '>'}{bound}",
            f"D={dG}",
            ok,
        )


def _has_element_of_order(G: Group, k: int) -> bool:
    return bool(np.any(G.element_orders == k))


def _check_center_gap(ctx: _Context):
    def fn(spec: GroupSpec, G: Group):
        if is_abelian(G):
            return
        Z = center(G)
        if Z.is_trivial():
            return
        dG, dZ = ctx.d(G), ctx.d(Z.as_group())
        gap = dG - dZ
        ok = gap >= 3
        detail = f"D(G)-D(Z)={gap}"
        if gap == 3:
            # equality forces C_p x| C_{q^2} with |Z| = q
            f = prime_divisors(G.order)
            shape = False
            if len(f) == 2:
                for p, q in ((f[0], f[1]), (f[1], f[0])):
                    if (
                        G.order == p * q * q
                        and (p - 1) % q == 0
                        and Z.order == q
                        and _has_element_of_order(G, q * q)
                        and sylow_subgroup(G, p).order == p
                        and any(r.is_normal and r.order == p for r in conjugacy_classes_of_subgroups(G))
                    ):
                        shape = True
            ok = ok and shape and dG == 3 and dZ == 0
            detail += f",shape={'Cp:Cq2' if shape else 'other'}"
        yield _rec("center-gap", spec.name, ">=3 (=3 only for Cp:Cq2, |Z|=q)", detail, ok)

    return _each_group(ctx, "center-gap", fn)


def _is_pgroup(G: Group) -> bool:
    return G.order > 1 and len(prime_divisors(G.order)) == 1


def _is_cyclic(G: Group) -> bool:
    return _has_element_of_order(G, G.order)


def _check_pgroup_bounds(ctx: _Context):
    def fn(spec: GroupSpec, G: Group):
        if not _is_pgroup(G):
            return
        n = ctx.d(G)
        # proper subgroups of a p-group are never self-normalizing
        proper = [r for r in conjugacy_classes_of_subgroups(G) if r.order < G.order]
        ok_sn = not any(r.self_normalizing for r in proper)
        yield _rec("pgroup-bounds", f"{spec.name}:proper-non-self-normalizing", True, ok_sn, ok_sn)
        if _is_cyclic(G):
            return
        m = round(math.log(G.order, prime_divisors(G.order)[0])) - 1
        classes = sum(1 for r in proper if r.order > 1)
        yield _rec("pgroup-bounds", f"{spec.name}:classes>=2m", f">={2 * m}", classes, classes >= 2 * m)
        if n <= 1:
            return
        cls, dl = nilpotency_class(G), derived_length(G)
        max_cls, max_dl = pgroup_bounds(n)
        ok = 2 * cls <= n and 2**dl <= n
        yield _rec(
            "pgroup-bounds",
            f"{spec.name}:class,dl",
            f"class<={max_cls},dl<={max_dl}",
            f"class={cls},dl={dl}",
            ok and cls <= max_cls and dl <= max_dl,
        )

    return _each_group(ctx, "pgroup-bounds", fn)


def _check_nilpotent_bounds(ctx: _Context):
    def fn(spec: GroupSpec, G: Group):
        cls = nilpotency_class(G)
        if cls is None or G.order == 1 or _is_cyclic(G):
            return
        n = ctx.d(G)
        k = len(prime_divisors(G.order))
        dl = derived_length(G)
        max_cls, max_dl = nilpotent_bounds(n, k)
        # exact: class * 2^k <= n + 2 - 2^k and 2^(dl-1) * 2^k <= n + 2 - 2^k
        ok = cls * 2**k <= n + 2 - 2**k and 2 ** (dl - 1 + k) <= n + 2 - 2**k
        yield _rec(
            "nilpotent-bounds",
            f"{spec.name}(k={k})",
            f"class<={max_cls},dl<={max_dl}",
            f"class={cls},dl={dl}",
            ok and cls <= max_cls and dl <= max_dl,
        )

    return _each_group(ctx, "nilpotent-bounds", fn)


def _check_solvable_bounds(ctx: _Context):
    def fn(spec: GroupSpec, G: Group):
        dl = derived_length(G)
        if dl is None:
            return
        n = ctx.d(G)
        cl = composition_length(G)
        yield _rec("solvable-bounds", f"{spec.name}:composition", f"<={n + 1}", cl, cl <= n + 1)
        if n >= 3:
            bound = solvable_dl_bound(n)
            ok = dl <= n - 1 and (dl <= 9 or 2 ** (dl - 9) <= (n + 1) ** 3)
            yield _rec("solvable-bounds", f"{spec.name}:dl", f"<={bound}", dl, ok and dl <= bound)

    return _each_group(ctx, "solvable-bounds", fn)


def _check_metabelian(ctx: _Context):
    def fn(spec: GroupSpec, G: Group):
        n = ctx.d(G)
        if n > 3:
            return
        dl = derived_length(G)
        yield _rec("metabelian", spec.name, "solvable,dl<=2", f"dl={dl}", dl is not None and dl <= 2)

    return _each_group(ctx, "metabelian", fn)


def _check_d4(ctx: _Context):
    def fn(spec: GroupSpec, G: Group):
        if ctx.d(G) != 4:
            return
        dl = derived_length(G)
        if dl is None:
            # the only nonsolvable group of order 60 is A5
            yield _rec("d4", spec.name, "nonsolvable=>A5", f"order={G.order}", G.order == 60)
        elif dl >= 3:
            z = center(G).order
            yield _rec("d4", spec.name, "dl>=3=>SL2(3)", f"dl={dl},order={G.order},|Z|={z}", dl == 3 and G.order == 24 and z == 2)
        else:
            yield _rec("d4", spec.name, "dl<=2", f"dl={dl}", True)

    return _each_group(ctx, "d4", fn)


def _check_classification(ctx: _Context):
    def fn(spec: GroupSpec, G: Group):
        n = ctx.d(G)
        v = classify_small(G)
        if v.predicted_d is None:
            ok = n >= 4
            expected = "D>=4"
        else:
            ok = v.predicted_d == n
            expected = f"D={v.predicted_d}"
        yield _rec("classification", spec.name, f"{v.bucket}:{expected}", f"D={n}", ok)

    return _each_group(ctx, "classification", fn)


def frobenius_formula(spec: GroupSpec) -> int | None:
    if spec.recipe == "frobenius_metacyclic":
        return formula_frob1(int(spec.param("n")), int(spec.param("m")))
    if spec.recipe == "frobenius_elem_abelian":
        p, k, q = (int(spec.param(x)) for x in ("p", "k", "q"))
        module = spec.param("module")
        if k == 2:
            return formula_frob2(p, q, module)
        if k == 3:
            return formula_frob3(p, q, module)
    return None


def _frobenius_orders(spec: GroupSpec) -> tuple[int, int]:
    p, q = int(spec.param("p")), int(spec.param("q"))
    if spec.recipe == "frobenius_metacyclic":
        return p ** int(spec.param("n")), q ** int(spec.param("m"))
    return p ** int(spec.param("k")), q


def _check_frobenius_formulas(ctx: _Context):
    def fn(spec: GroupSpec, G: Group):
        if spec.recipe not in ("frobenius_metacyclic", "frobenius_elem_abelian"):
            return
        formula = frobenius_formula(spec)
        n = ctx.d(G)
        yield _rec("frobenius-formulas", f"{spec.name}:D", formula, n, formula == n)
        fd = frobenius_decomposition(G)
        want = _frobenius_orders(spec)
        got = None if fd is None else (fd.kernel_order, fd.complement_order)
        yield _rec("frobenius-formulas", f"{spec.name}:kernel,complement", want, got, got == want)

    return _each_group(ctx, "frobenius-formulas", fn)


def _commute(G: Group, xs, ys) -> bool:
    return all(int(G.mul(a, b)) == int(G.mul(b, a)) for a in xs for b in ys)


def _quotient_is_cyclic(G: Group, N) -> bool:
    Q = quotient(G, N).quotient
    return _is_cyclic(Q)


def _check_background(ctx: _Context):
    def fn(spec: GroupSpec, G: Group):
        name = spec.name
        records = conjugacy_classes_of_subgroups(G, ctx.max_subgroups)
        # Burnside: P central in N_G(P) gives a normal p-complement
        for p in prime_divisors(G.order):
            P = sylow_subgroup(G, p)
            NP = normalizer(G, P)
            if _commute(G, P.generators, NP.generators):
                ok = has_normal_p_complement(G, p)
                yield _rec("background", f"{name}:burnside(p={p})", "normal p-complement", ok, ok)
            # Sylow normalizers are self-normalizing
            nn = normalizer(G, NP).order
            yield _rec("background", f"{name}:sylow-normalizer(p={p})", NP.order, nn, nn == NP.order)
        # Z-groups: G' and G/G' cyclic of coprime orders
        if is_z_group(G):
            D = derived_subgroup(G)
            ok = (
                _is_cyclic(D.as_group())
                and _quotient_is_cyclic(G, D)
                and math.gcd(D.order, G.order // D.order) == 1
            )
            yield _rec("background", f"{name}:z-group", "G',G/G' cyclic,coprime", ok, ok)
        # Frobenius kernel nilpotent, coprime to the complement; complement Sylows cyclic or quaternion
        fd = frobenius_decomposition(G)
        if fd is not None:
            K, H = fd.kernel, fd.complement
            nil = nilpotency_class(K.as_group()) is not None
            coprime = math.gcd(K.order, H.order) == 1
            Hg = H.as_group()
            sylows_ok = True
            for p in prime_divisors(H.order):
                S = sylow_subgroup(Hg, p).as_group()
                involutions = int(np.sum(S.element_orders == 2))
                sylows_ok &= _is_cyclic(S) or (p == 2 and involutions == 1)
            ok = nil and coprime and sylows_ok
            yield _rec(
                "background",
                f"{name}:frobenius",
                "kernel nilpotent,coprime,complement Sylows cyclic/quaternion",
                f"nilpotent={nil},coprime={coprime},sylows={sylows_ok}",
                ok,
            )
        # proper subnormal subgroups are not self-normalizing
        bad = 0
        for rec in records:
            if rec.order < G.order and is_subnormal(G, rec.representative) and rec.self_normalizing:
                bad += 1
        yield _rec("background", f"{name}:subnormal", 0, bad, bad == 0)
        # nilpotent iff every proper subgroup is not self-normalizing
        nilpotent = nilpotency_class(G) is not None
        all_non_sn = not any(r.self_normalizing for r in records if r.order < G.order)
        yield _rec("background", f"{name}:nilpotent-iff", nilpotent, all_non_sn, nilpotent == all_non_sn)

    return _each_group(ctx, "background", fn)


CHECKS: dict[str, Callable[[_Context], Iterable[CheckRecord]]] = {
    "witness": _check_witness,
    "cyclic-pgroups": _check_cyclic_pgroups,
    "expectations": _check_expectations,
    "quotient-lemma": _check_quotient_lemma,
    "product-formula": _check_product_formula,
    "center-gap": _check_center_gap,
    "pgroup-bounds": _check_pgroup_bounds,
    "nilpotent-bounds": _check_nilpotent_bounds,
    "solvable-bounds": _check_solvable_bounds,
    "metabelian": _check_metabelian,
    "d4": _check_d4,
    "classification": _check_classification,
    "frobenius-formulas": _check_frobenius_formulas,
    "background": _check_background,
}


def select_checks(selector: str | None) -> list[str]:
    """``None``/``"all"`` or a comma-separated list of check ids."""
    if selector is None or selector.strip() in ("", "all"):
        return list(CHECKS)
    out = []
    for part in selector.split(","):
        part = part.strip()
        if part not in CHECKS:
            raise KeyError(f"unknown check {part!r}; known: {', '.join(CHECKS)}")
        if part not in out:
            out.append(part)
    # canonical order regardless of how the selector was written
    return [c for c in CHECKS if c in out]


def run_checks(
    catalog: Catalog,
    checks: str | Iterable[str] | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
    max_subgroups: int = DEFAULT_MAX_SUBGROUPS,
) -> VerificationReport:
    ids = select_checks(checks if checks is None or isinstance(checks, str) else ",".join(checks))
    ctx = _Context(catalog, max_order, max_subgroups)
    records: list[CheckRecord] = []
    for cid in ids:
        try:
            records.extend(CHECKS[cid](ctx))
        except Exception as exc:
            records.append(_rec(cid, "*", "no error", f"error: {type(exc).__name__}: {exc}", False))
    return VerificationReport(tuple(records))


# -- Frobenius families -----------------------------------------------------------


def parse_grid(text: str) -> dict[str, list[int]]:
    """``"p=5..13,q=2..5,n=1..3"`` -> ``{"p": [...], ...}``; values may also be ``a|b|c``."""
    out: dict[str, list[int]] = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ValueError(f"bad grid term {part!r}")
        k, v = part.split("=", 1)
        if ".." in v:
            lo, hi = v.split("..", 1)
            vals = list(range(int(lo), int(hi) + 1))
        else:
            vals = [int(x) for x in v.split("|")]
        out[k.strip()] = vals
    return out


FAMILY_FIELDS = ("lemma", "p", "q", "n", "m", "case", "order", "formula", "census", "status")


@dataclass(frozen=True)
class FamilyRow:
    lemma: str
    p: int
    q: int
    n: int
    m: int
    case: str
    order: int
    formula: int
    census: int

    @property
    def status(self) -> str:
        return "pass" if self.formula == self.census else "fail"


def _primes(vals: Iterable[int]) -> list[int]:
    from .gf import is_prime

    return [v for v in vals if is_prime(v)]


FAMILY_CASES = {
    "frob2": ("irreducible", "homogeneous-scalar", "split-distinct"),
    "frob3": ("irreducible", "homogeneous-scalar", "mixed-dims", "three-components"),
}


def frobenius_family(
    lemma: str,
    grid: dict[str, list[int]],
    max_order: int = DEFAULT_MAX_ORDER,
    max_subgroups: int = DEFAULT_MAX_SUBGROUPS,
) -> list[FamilyRow]:
    """Census against closed form for every realizable grid point."""
    ps = _primes(grid.get("p", range(2, 14)))
    qs = _primes(grid.get("q", range(2, 8)))
    rows: list[FamilyRow] = []
    for p in ps:
        for q in qs:
            if p == q:
                continue
            if lemma == "frob1":
                for n in grid.get("n", [1, 2, 3]):
                    for m in grid.get("m", [1, 2]):
                        try:
                            C.metacyclic_multiplier(p, n, q, m)
                            formula = formula_frob1(n, m)
                        except (C.ConstructionError, FormulaError):
                            continue
                        G = C.frobenius_metacyclic(p, n, q, m, max_order)
                        d = census(G, max_subgroups).d_value
                        rows.append(FamilyRow(lemma, p, q, n, m, "cyclic", G.order, formula, d))
            elif lemma in FAMILY_CASES:
                k = 2 if lemma == "frob2" else 3
                fn = formula_frob2 if k == 2 else formula_frob3
                for case in FAMILY_CASES[lemma]:
                    try:
                        formula = fn(p, q, case)
                        C.matrix_of_order(p, k, q, case)
                    except (C.ConstructionError, FormulaError):
                        continue
                    G = C.frobenius_elem_abelian(p, k, q, case, max_order)
                    d = census(G, max_subgroups).d_value
                    rows.append(FamilyRow(lemma, p, q, k, 1, case, G.order, formula, d))
            else:
                raise ValueError(f"unknown lemma {lemma!r}; expected frob1, frob2 or frob3")
    return rows


def family_csv(rows: list[FamilyRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FAMILY_FIELDS)
    for r in rows:
        w.writerow([r.lemma, r.p, r.q, r.n, r.m, r.case, r.order, r.formula, r.census, r.status])
    return buf.getvalue()
