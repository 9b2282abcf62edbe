import json
from typing import Any, Dict, Iterable, List, Mapping, Optional

import pandas as pd
from rich.console import Console
from rich.table import Table

from src.arith.cyclotomic import CyclotomicNumber
from src.errors import InvalidInputError
from src.koszul.complex import PageReport, TwistedDims
from src.so3.twisted import GradedVerlindeRing, KTableEntry, QuotientRingRk
from src.verlinde.core import LevelData, RegularPoint
from src.verlinde.fusion import FusionRing
from src.verlinde.oracle import OracleCheck

FORMATS = ("text", "json", "csv")


def exact(x: CyclotomicNumber) -> str:
    """Rational value when there is one, otherwise the power-basis form."""
    return str(x.as_rational()) if x.is_rational() else str(x)


def terms(d: Mapping[Any, int]) -> str:
    if not d:
        return "0"
    parts = []
    for label, c in d.items():
        coef = "" if c == 1 else ("-" if c == -1 else str(c))
        parts.append(f"{coef}{label}")
    return " + ".join(parts).replace("+ -", "- ")


def frame_table(frame: pd.DataFrame, title: str) -> Table:
    table = Table(title=title)
    for col in frame.columns:
        table.add_column(str(col))
    for row in frame.itertuples(index=False):
        table.add_row(*[str(v) for v in row])
    return table


def emit(
    out: Console,
    fmt: str,
    payload: Any,
    frame: pd.DataFrame,
    title: str,
    table: Optional[Table] = None,
) -> None:
    """One document on stdout: json and csv unstyled, text as a rich table."""
    if fmt == "json":
        out.out(json.dumps(payload, indent=2), highlight=False)
    elif fmt == "csv":
        out.out(frame.to_csv(index=False), end="", highlight=False)
    elif fmt == "text":
        out.print(table if table is not None else frame_table(frame, title))
    else:
        raise InvalidInputError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


# ---- per-command documents ---------------------------------------------------------


def fusion_table(ring: FusionRing) -> Table:
    table = Table(title=f"{ring.group} level {ring.level} fusion")
    table.add_column("x")
    for w in ring.basis:
        table.add_column(str(w))
    for a in ring.basis:
        table.add_row(str(a), *[terms({str(k): v for k, v in ring.product(a, b).items()}) for b in ring.basis])
    return table


def points_frame(ld: LevelData, points: List[RegularPoint], delta_sq: List[CyclotomicNumber]) -> pd.DataFrame:
    rows = [
        {"label": str(p.label), "xi": ",".join(str(x) for x in p.xi), "delta_sq": exact(d)}
        for p, d in zip(points, delta_sq)
    ]
    return pd.DataFrame(rows, columns=["label", "xi", "delta_sq"])


def characters_doc(ld: LevelData, points: List[RegularPoint], table: Mapping[Any, List[CyclotomicNumber]]) -> Dict[str, Any]:
    return {
        "group": ld.group,
        "level": ld.h,
        "points": [{"label": str(p.label), "xi": [str(x) for x in p.xi]} for p in points],
        "characters": {str(w): [exact(v) for v in values] for w, values in table.items()},
    }


def characters_frame(points: List[RegularPoint], table: Mapping[Any, List[CyclotomicNumber]]) -> pd.DataFrame:
    rows = []
    for w, values in table.items():
        row = {"weight": str(w)}
        row.update({f"f={p.label}": exact(v) for p, v in zip(points, values)})
        rows.append(row)
    return pd.DataFrame(rows, columns=["weight"] + [f"f={p.label}" for p in points])


def so3_rows(entries: Iterable[KTableEntry]) -> List[Dict[str, Any]]:
    return [
        {
            "twisting": e.twisting.label,
            "k0": e.k0,
            "k1": e.k1,
            "starred": e.starred,
            "rank_k0": e.k0_rank,
            "rank_k1": e.k1_rank,
        }
        for e in entries
    ]


def rk_frame(ring: QuotientRingRk) -> pd.DataFrame:
    rows = [{"p": f"[{p}]", "q": f"[{q}]", "product": terms({f"[{k}]": v for k, v in prod.items()})} for (p, q), prod in ring.mult.items()]
    return pd.DataFrame(rows, columns=["p", "q", "product"])


def rk_doc(ring: QuotientRingRk) -> Dict[str, Any]:
    return {
        "ring": ring.label,
        "basis": [f"[{n}]" for n in ring.basis],
        "products": [
            {"p": p, "q": q, "terms": {str(k): v for k, v in prod.items()}} for (p, q), prod in ring.mult.items()
        ],
    }


def graded_frame(ring: GradedVerlindeRing) -> pd.DataFrame:
    rows = [
        {"x": x, "y": y, "product": terms(ring.product(x, y))}
        for i, x in enumerate(ring.basis)
        for y in ring.basis[i:]
    ]
    return pd.DataFrame(rows, columns=["x", "y", "product"])


def graded_doc(ring: GradedVerlindeRing) -> Dict[str, Any]:
    return {
        "k": ring.k,
        "basis": list(ring.basis),
        "constants": [
            [a, b, c, int(ring.mult[a, b, c])]
            for a in range(ring.size)
            for b in range(ring.size)
            for c in range(ring.size)
            if ring.mult[a, b, c]
        ],
    }


def koszul_doc(n: int, beta: Any, D: int, dims: TwistedDims, pages: PageReport) -> Dict[str, Any]:
    return {
        "n": n,
        "beta": [list(row) for row in beta],
        "truncation": D,
        "even": dims.even,
        "odd": dims.odd,
        "stable": dims.stable,
        "d_squared_zero": dims.d_squared_zero,
        "pages": pages.to_json(),
    }


def koszul_frame(dims: TwistedDims) -> pd.DataFrame:
    rows = [{"e": e, "s": s, "dim": v} for (e, s), v in sorted(dims.by_bidegree.items())]
    return pd.DataFrame(rows, columns=["e", "s", "dim"])


def checks_frame(checks: List[OracleCheck]) -> pd.DataFrame:
    rows = [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
    return pd.DataFrame(rows, columns=["check", "passed", "detail"])
