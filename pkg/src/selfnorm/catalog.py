"""Group catalogs: a line-oriented text format and the built-in catalog.

Grammar (``#`` starts a comment, blank lines separate entries)::

    group <name> degree <d>
    gen <cycles>
    ...
    expect <prop>=<value>

    group <name> recipe <constructor> key=value ...
    expect <prop>=<value>

Expectation properties: ``d``, ``order``, ``derived-length``,
``nilpotency-class`` and ``center-order``; ``none`` is a valid value for
the last three's "undefined" cases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from . import constructors as C
from .group import DEFAULT_MAX_ORDER, Group, enumerate_group
from .perm import PermutationError, parse_permutation

__all__ = [
    "Catalog",
    "CatalogError",
    "EXPECT_PROPS",
    "GroupSpec",
    "RECIPES",
    "builtin_catalog",
    "format_catalog",
    "parse_catalog",
    "parse_recipe",
]

EXPECT_PROPS = ("d", "order", "derived-length", "nilpotency-class", "center-order")


class CatalogError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _int(v: str) -> int:
    return int(v)


def _factors(v: str) -> tuple[str, ...]:
    parts = tuple(p for p in v.split(",") if p)
    if len(parts) < 2:
        raise ValueError("direct_product needs at least two factors")
    return parts


@dataclass(frozen=True)
class _Recipe:
    params: dict[str, Callable[[str], object]]
    build: Callable[..., Group]
    optional: tuple[str, ...] = ()


def _direct_product(factors, max_order):
    out = C.resolve_group(factors[0], max_order)
    for name in factors[1:]:
        out = C.direct_product(out, C.resolve_group(name, max_order), max_order)
    return out


RECIPES: dict[str, _Recipe] = {
    "cyclic": _Recipe({"n": _int}, lambda n, max_order: C.cyclic(n, max_order)),
    "dihedral": _Recipe({"n": _int}, lambda n, max_order: C.dihedral(n, max_order)),
    "dicyclic": _Recipe({"n": _int}, lambda n, max_order: C.dicyclic(n, max_order)),
    "sym": _Recipe({"n": _int}, lambda n, max_order: C.sym(n, max_order)),
    "alt": _Recipe({"n": _int}, lambda n, max_order: C.alt(n, max_order)),
    "psl2": _Recipe({"q": _int}, lambda q, max_order: C.psl2(q, max_order)),
    "preset": _Recipe({"name": str}, lambda name, max_order: C.preset(name, max_order)),
    "direct_product": _Recipe({"factors": _factors}, lambda factors, max_order: _direct_product(factors, max_order)),
    "frobenius_metacyclic": _Recipe(
        {"p": _int, "n": _int, "q": _int, "m": _int},
        lambda p, n, q, m, max_order: C.frobenius_metacyclic(p, n, q, m, max_order),
    ),
    "frobenius_elem_abelian": _Recipe(
        {"p": _int, "k": _int, "q": _int, "module": str},
        lambda p, k, q, module, max_order: C.frobenius_elem_abelian(p, k, q, module, max_order),
    ),
    "central_extension_example": _Recipe(
        {"p": _int, "q": _int}, lambda p, q, max_order: C.central_extension_example(p, q, max_order)
    ),
}


@dataclass(frozen=True)
class GroupSpec:
    name: str
    recipe: str | None = None
    params: tuple[tuple[str, str], ...] = ()
    degree: int | None = None
    generators: tuple[str, ...] = ()
    expected: tuple[tuple[str, int | None], ...] = ()

    def param(self, key: str) -> str:
        return dict(self.params)[key]

    def expectation(self, prop: str):
        return dict(self.expected).get(prop, _MISSING)

    def build(self, max_order: int = DEFAULT_MAX_ORDER) -> Group:
        if self.recipe is not None:
            rec = RECIPES[self.recipe]
            kwargs = {k: rec.params[k](v) for k, v in self.params}
            return rec.build(max_order=max_order, **kwargs)
        gens = [parse_permutation(g, self.degree) for g in self.generators]
        return enumerate_group(self.degree, gens, max_order=max_order)


_MISSING = object()


@dataclass(frozen=True)
class Catalog:
    specs: tuple[GroupSpec, ...]
    provenance: str = field(default="<text>", compare=False)

    def __iter__(self):
        return iter(self.specs)

    def __len__(self) -> int:
        return len(self.specs)

    def names(self) -> list[str]:
        return [s.name for s in self.specs]

    def get(self, name: str) -> GroupSpec:
        for s in self.specs:
            if s.name == name:
                return s
        raise KeyError(name)


_NAME = re.compile(r"[A-Za-z0-9_()^,.:+\-]+")


def _validate_recipe(ctor: str, params: dict[str, str], line: int | None) -> None:
    if ctor not in RECIPES:
        raise CatalogError(f"unknown constructor {ctor!r}", line)
    rec = RECIPES[ctor]
    missing = [k for k in rec.params if k not in params and k not in rec.optional]
    unknown = [k for k in params if k not in rec.params]
    if missing:
        raise CatalogError(f"{ctor}: missing parameter(s) {', '.join(missing)}", line)
    if unknown:
        raise CatalogError(f"{ctor}: unknown parameter(s) {', '.join(unknown)}", line)
    for k, v in params.items():
        try:
            rec.params[k](v)
        except ValueError as exc:
            raise CatalogError(f"{ctor}: bad value {k}={v!r} ({exc})", line) from None


def parse_recipe(tokens: list[str], line: int | None = None) -> tuple[str, tuple[tuple[str, str], ...]]:
    """``["frobenius_metacyclic", "p=7", ...]`` -> validated ``(ctor, params)``."""
    if not tokens:
        raise CatalogError("empty recipe", line)
    ctor, rest = tokens[0], tokens[1:]
    params: dict[str, str] = {}
    for tok in rest:
        if "=" not in tok:
            raise CatalogError(f"expected key=value, got {tok!r}", line)
        k, v = tok.split("=", 1)
        if k in params:
            raise CatalogError(f"parameter {k!r} repeated", line)
        params[k] = v
    _validate_recipe(ctor, params, line)
    return ctor, tuple(params.items())


def _parse_expect_value(prop: str, v: str, line: int):
    if v.lower() == "none":
        if prop in ("d", "order"):
            raise CatalogError(f"{prop} cannot be none", line)
        return None
    try:
        return int(v)
    except ValueError:
        raise CatalogError(f"expectation {prop} needs an integer, got {v!r}", line) from None


def parse_catalog(text: str, provenance: str = "<text>") -> Catalog:
    specs: list[GroupSpec] = []
    cur: dict | None = None
    names: set[str] = set()

    def finish():
        nonlocal cur
        if cur is None:
            return
        specs.append(
            GroupSpec(
                name=cur["name"],
                recipe=cur["recipe"],
                params=cur["params"],
                degree=cur["degree"],
                generators=tuple(cur["gens"]),
                expected=tuple(cur["expected"]),
            )
        )
        cur = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "group":
            finish()
            toks = rest.split()
            if len(toks) < 2:
                raise CatalogError("expected 'group <name> degree <d>' or 'group <name> recipe ...'", lineno)
            name, kind = toks[0], toks[1]
            if not _NAME.fullmatch(name):
                raise CatalogError(f"invalid group name {name!r}", lineno)
            if name in names:
                raise CatalogError(f"duplicate group name {name!r}", lineno)
            names.add(name)
            cur = {"name": name, "recipe": None, "params": (), "degree": None, "gens": [], "expected": []}
            if kind == "degree":
                if len(toks) != 3:
                    raise CatalogError("expected 'group <name> degree <d>'", lineno)
                try:
                    cur["degree"] = int(toks[2])
                except ValueError:
                    raise CatalogError(f"bad degree {toks[2]!r}", lineno) from None
                if cur["degree"] < 1:
                    raise CatalogError("degree must be positive", lineno)
            elif kind == "recipe":
                cur["recipe"], cur["params"] = parse_recipe(toks[2:], lineno)
            else:
                raise CatalogError(f"expected 'degree' or 'recipe', got {kind!r}", lineno)
        elif head == "gen":
            if cur is None:
                raise CatalogError("'gen' outside a group entry", lineno)
            if cur["recipe"] is not None:
                raise CatalogError("'gen' not allowed in a recipe entry", lineno)
            try:
                parse_permutation(rest, cur["degree"])
            except PermutationError as exc:
                raise CatalogError(str(exc), lineno) from None
            cur["gens"].append(rest)
        elif head == "expect":
            if cur is None:
                raise CatalogError("'expect' outside a group entry", lineno)
            for tok in rest.split():
                if "=" not in tok:
                    raise CatalogError(f"expected prop=value, got {tok!r}", lineno)
                prop, v = tok.split("=", 1)
                if prop not in EXPECT_PROPS:
                    raise CatalogError(f"unknown expectation {prop!r}", lineno)
                if any(p == prop for p, _ in cur["expected"]):
                    raise CatalogError(f"expectation {prop!r} repeated", lineno)
                cur["expected"].append((prop, _parse_expect_value(prop, v, lineno)))
        else:
            raise CatalogError(f"unknown directive {head!r}", lineno)
    finish()
    return Catalog(tuple(specs), provenance)


def format_catalog(catalog: Catalog) -> str:
    blocks = []
    for s in catalog.specs:
        lines = []
        if s.recipe is not None:
            params = " ".join(f"{k}={v}" for k, v in s.params)
            lines.append(f"group {s.name} recipe {s.recipe}" + (f" {params}" if params else ""))
        else:
            lines.append(f"group {s.name} degree {s.degree}")
            lines.extend(f"gen {g}" for g in s.generators)
        if s.expected:
            vals = " ".join(f"{p}={'none' if v is None else v}" for p, v in s.expected)
            lines.append(f"expect {vals}")
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


# -- built-in catalog -------------------------------------------------------------


def _spec(spec_name: str, recipe: str, expected: dict | None = None, **params) -> GroupSpec:
    return GroupSpec(
        name=spec_name,
        recipe=recipe,
        params=tuple((k, str(v)) for k, v in params.items()),
        expected=tuple((expected or {}).items()),
    )


def _divisor_count(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if n % k == 0)


def _small_groups() -> list[GroupSpec]:
    """The 28 groups of order at most 15, one per isomorphism type.

    Every entry carries its order, center order and derived length (which
    pins down abelianness), so the expectations check verifies the list.
    """
    out = []
    for n in range(1, 16):
        # every proper nontrivial subgroup of an abelian group is normal
        d = max(_divisor_count(n) - 2, 0)
        exp = {"order": n, "d": d, "derived-length": int(n > 1), "center-order": n}
        out.append(_spec(f"C{n}", "cyclic", exp, n=n))

    def ab(order, d):
        return {"order": order, "d": d, "derived-length": 1, "center-order": order}

    def nonab(order, d, z, **more):
        return {"order": order, "d": d, "derived-length": 2, "center-order": z, **more}

    out += [
        _spec("V4", "dihedral", ab(4, 3), n=2),
        _spec("C4xC2", "direct_product", ab(8, 6), factors="C4,C2"),
        _spec("C2xC2xC2", "direct_product", ab(8, 14), factors="C2,C2,C2"),
        _spec("C6xC2", "direct_product", ab(12, 8), factors="C6,C2"),
        _spec("D3", "dihedral", nonab(6, 1, 1), n=3),
        _spec("D4", "dihedral", nonab(8, 6, 2, **{"nilpotency-class": 2}), n=4),
        _spec("D5", "dihedral", nonab(10, 1, 1), n=5),
        _spec("D6", "dihedral", nonab(12, 7, 2), n=6),
        _spec("D7", "dihedral", nonab(14, 1, 1), n=7),
        _spec("Q8", "dicyclic", nonab(8, 4, 2, **{"nilpotency-class": 2}), n=2),
        _spec("A4", "alt", nonab(12, 2, 1), n=4),
        _spec("Dic3", "dicyclic", nonab(12, 3, 2), n=3),
        _spec("C3xC3", "direct_product", ab(9, 4), factors="C3,C3"),
    ]
    return out


# (p, n, q, m) for cyclic kernels; (p, k, q, module) for elementary abelian ones
FROBENIUS_GRID_METACYCLIC = [
    (7, 1, 3, 1),
    (13, 1, 3, 1),
    (11, 1, 5, 1),
    (5, 1, 2, 2),
    (13, 1, 2, 2),
    (5, 2, 2, 1),
    (7, 2, 2, 1),
    (7, 2, 3, 1),
    (3, 3, 2, 1),
]
FROBENIUS_GRID_ELEM = [
    (2, 2, 3, "irreducible"),
    (5, 2, 3, "irreducible"),
    (11, 2, 3, "irreducible"),
    (3, 2, 2, "homogeneous-scalar"),
    (5, 2, 2, "homogeneous-scalar"),
    (7, 2, 3, "homogeneous-scalar"),
    (7, 2, 3, "split-distinct"),
    (13, 2, 3, "split-distinct"),
    (2, 3, 7, "irreducible"),
    (3, 3, 2, "homogeneous-scalar"),
    (7, 3, 3, "homogeneous-scalar"),
    (7, 3, 3, "mixed-dims"),
]


def frobenius_spec_name(recipe: str, params: dict) -> str:
    if recipe == "frobenius_metacyclic":
        return f"Frob1_p{params['p']}n{params['n']}q{params['q']}m{params['m']}"
    return f"Frob{params['k']}_p{params['p']}q{params['q']}_{params['module']}"


def _frobenius_grid() -> list[GroupSpec]:
    from .census import formula_frob1, formula_frob2, formula_frob3

    out = []
    for p, n, q, m in FROBENIUS_GRID_METACYCLIC:
        params = {"p": p, "n": n, "q": q, "m": m}
        exp = {"order": p**n * q**m, "d": formula_frob1(n, m)}
        out.append(_spec(frobenius_spec_name("frobenius_metacyclic", params), "frobenius_metacyclic", exp, **params))
    for p, k, q, module in FROBENIUS_GRID_ELEM:
        params = {"p": p, "k": k, "q": q, "module": module}
        formula = formula_frob2 if k == 2 else formula_frob3
        exp = {"order": p**k * q, "d": formula(p, q, module)}
        out.append(_spec(frobenius_spec_name("frobenius_elem_abelian", params), "frobenius_elem_abelian", exp, **params))
    return out


def builtin_catalog() -> Catalog:
    specs = _small_groups()
    specs += [
        _spec("S4", "preset", {"order": 24, "d": 7, "derived-length": 3}, name="S4"),
        _spec("A5", "preset", {"order": 60, "d": 4, "derived-length": None}, name="A5"),
        _spec("SL2(3)", "preset", {"order": 24, "d": 4, "derived-length": 3, "center-order": 2}, name="SL2(3)"),
        _spec("A6", "preset", {"order": 360, "d": 11}, name="A6"),
        _spec("PSL(2,5)", "preset", {"order": 60, "d": 4}, name="PSL(2,5)"),
        _spec("PSL(2,7)", "preset", {"order": 168, "d": 8}, name="PSL(2,7)"),
        _spec("PSL(2,8)", "preset", {"order": 504, "d": 6}, name="PSL(2,8)"),
    ]
    # cyclic p-groups C_{p^(n+1)} lie in D_n
    specs += [
        _spec("C16", "cyclic", {"order": 16, "d": 3}, n=16),
        _spec("C32", "cyclic", {"order": 32, "d": 4}, n=32),
        _spec("C27", "cyclic", {"order": 27, "d": 2}, n=27),
        _spec("C81", "cyclic", {"order": 81, "d": 3}, n=81),
        _spec("C25", "cyclic", {"order": 25, "d": 1}, n=25),
        _spec("C125", "cyclic", {"order": 125, "d": 2}, n=125),
    ]
    # further p-groups, nilpotent products and small nonnilpotent groups
    specs += [
        _spec("D8", "dihedral", {"order": 16, "d": 9, "nilpotency-class": 3}, n=8),
        _spec("Dic4", "dicyclic", {"order": 16, "d": 7, "nilpotency-class": 3}, n=4),
        _spec("C2xD4", "direct_product", {"order": 16, "d": 25}, factors="C2,D4"),
        _spec("C2xQ8", "direct_product", {"order": 16, "d": 17}, factors="C2,Q8"),
        _spec("C4xC4", "direct_product", {"order": 16, "d": 13}, factors="C4,C4"),
        _spec("D4xC3", "direct_product", {"order": 24, "d": 14}, factors="D4,C3"),
        _spec("Q8xC3", "direct_product", {"order": 24, "d": 10}, factors="Q8,C3"),
        _spec("Q8xC5", "direct_product", {"order": 40, "d": 10}, factors="Q8,C5"),
        _spec("S3xC3", "direct_product", {"order": 18, "d": 6}, factors="D3,C3"),
        _spec("S3xS3", "direct_product", {"order": 36, "d": 16}, factors="D3,D3"),
        _spec("D15", "dihedral", {"order": 30, "d": 3}, n=15),
        _spec("Dic5", "dicyclic", {"order": 20, "d": 3, "center-order": 2}, n=5),
        _spec("S5", "sym", {"order": 120, "d": 13, "derived-length": None}, n=5),
    ]
    specs += [
        _spec("CE_p3q2", "central_extension_example", {"order": 12, "d": 3, "center-order": 2}, p=3, q=2),
        _spec("CE_p5q2", "central_extension_example", {"order": 20, "d": 3, "center-order": 2}, p=5, q=2),
        _spec("CE_p7q3", "central_extension_example", {"order": 63, "d": 3, "center-order": 3}, p=7, q=3),
    ]
    specs += _frobenius_grid()
    return Catalog(tuple(specs), "builtin")
