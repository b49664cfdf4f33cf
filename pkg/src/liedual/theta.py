"""Correspondence bookkeeping across the dual pair.

Infinitesimal-character transfer to the Spin(8) side, degenerate
principal-series type counts, their comparison with the stabilized graded
multiplicities, and dimension verification of the lowest-type tables.
All infinitesimal-character comparisons are exact orbit equalities of
dominant representatives; there is no numeric tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from pathlib import Path

from .charalg import (
    InfChar,
    infchar_of_vector,
    infinitesimal_character,
    weight_dimension,
)
from .lattice import (
    GroupSpec,
    Vector,
    build_root_system,
    group,
    make_weight,
    vadd,
    vscale,
)
from .minrep import quasisplit_level_multiplicity, so3_invariants

_TORUS_CASES = {
    # (E, K) labels: split/hermitian Jordan algebra x split/complex torus part.
    "R3-R2": "all rational",
    "R3-C": "all integral",
    "RC-R2": "first rational, difference of last two integral",
    "RC-C": "first integral, difference of last two integral",
}


class FixtureError(RuntimeError):
    """A table fixture is missing or malformed."""


@dataclass(frozen=True)
class TorusCharacterData:
    """Sum-zero parameter triple of a two-torus character, desk scale."""

    nu: tuple[Q, Q, Q]
    case: str | None = None

    def __post_init__(self) -> None:
        if sum(self.nu, Q(0)) != 0:
            raise ValueError("torus parameters must sum to zero")
        if self.case is not None:
            if self.case not in _TORUS_CASES:
                raise ValueError(f"unknown torus case {self.case!r}")
            if self.case == "R3-C" and any(v.denominator != 1 for v in self.nu):
                raise ValueError("R3-C characters are integer triples")
            if self.case == "RC-R2" and (self.nu[1] - self.nu[2]).denominator != 1:
                raise ValueError("complex-place parameters differ by an integer")
            if self.case == "RC-C" and self.nu[0].denominator != 1:
                raise ValueError("RC-C characters have an integer first entry")


def torus_character(a, b, c, case: str | None = None) -> TorusCharacterData:
    return TorusCharacterData((Q(a), Q(b), Q(c)), case)


def infchar_lift(nu: TorusCharacterData) -> InfChar:
    """Transfer of a sum-zero triple to a Spin(8) infinitesimal character.

    Raw vector (a+2, -a+2, b+c, c-b)/2 for (a, b, c) = nu, then the dominant
    orbit representative.  The sign of the last coordinate is pinned by the
    graded decomposition: the level-n charge triple must land on the
    infinitesimal character of the level-n Spin(8) type.
    """
    a, b, c = nu.nu
    raw = (
        (a + 2) / 2,
        (-a + 2) / 2,
        (b + c) / 2,
        (c - b) / 2,
    )
    return infchar_of_vector(build_root_system("D4"), raw)


def infchar_symmetric_form(nu: TorusCharacterData) -> InfChar:
    """Same transfer written as beta + (a alpha_1 + b alpha_2 + c alpha_3)/2.

    beta = (1,1,0,0) is the highest root; alpha_1 = e1-e2, alpha_2 = e3-e4,
    alpha_3 = e3+e4 are the three outer simple roots permuted by the
    diagram symmetries.  Must agree with infchar_lift identically.
    """
    rs = build_root_system("D4")
    beta: Vector = (Q(1), Q(1), Q(0), Q(0))
    outer = (rs.simple_roots[0], rs.simple_roots[2], rs.simple_roots[3])
    v = beta
    for coeff, alpha in zip(nu.nu, outer, strict=True):
        v = vadd(v, vscale(coeff / 2, alpha))
    return infchar_of_vector(rs, v)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    expected: str
    actual: str


@dataclass(frozen=True)
class Report:
    title: str
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.status == "PASS" for c in self.checks)

    @property
    def summary(self) -> str:
        passed = sum(1 for c in self.checks if c.status == "PASS")
        return f"{'PASS' if self.ok else 'FAIL'} {passed}/{len(self.checks)}"


def graded_charge_triple(n: int, b: int) -> tuple[int, int, int]:
    """Torus character paired with the level-n, charge-b Spin(8) type."""
    if abs(b) > n or (n - b) % 2:
        raise ValueError("need |b| <= n with b = n (mod 2)")
    return (n + 4, -(b + n) // 2 - 2, (b - n) // 2 - 2)


def lemma_infchar_consistency(max_level: int) -> Report:
    """Level-by-level agreement of the transfer with the graded model.

    For each level n and admissible charge b, the lift of the torus triple
    (n+4, -(b+n)/2-2, (b-n)/2-2) must equal the infinitesimal character of
    the Spin(8) type (n/2, n/2, n/2, b/2).
    """
    rs = build_root_system("D4")
    checks = []
    for n in range(max_level + 1):
        for b in range(-n, n + 1, 2):
            lifted = infchar_lift(torus_character(*graded_charge_triple(n, b)))
            direct = infinitesimal_character(
                rs, (Q(n, 2), Q(n, 2), Q(n, 2), Q(b, 2))
            )
            status = "PASS" if lifted == direct else "FAIL"
            checks.append(
                CheckResult(
                    f"infchar n={n} b={b}",
                    status,
                    str(direct.rep),
                    str(lifted.rep),
                )
            )
    return Report("infinitesimal-character consistency", tuple(checks))


# --------------------------------------------------------------------------
# Degenerate principal-series multiplicities.


def ps_multiplicity_split(a: int, b: int, c: int, d: int) -> int:
    """Split-case series multiplicity: diagonal-SU2 invariants of the type."""
    return so3_invariants(a, b, c, d)


def _quasisplit_gates(x: int, y: int, z: int, m: int) -> bool:
    return (
        z % 2 == (x - y) % 2 == m % 2
        and z > x - y >= m
    )


def ps_multiplicity_quasisplit(x: int, y: int, z: int, m: int) -> int:
    """Series multiplicity of V_(x,y) (x) V_z at circle character m.

    Zero unless z = x-y = m (mod 2) and z > x-y >= m; otherwise the number
    of integers t with x+y-m >= 2t >= x-y-m and z >= 2t+2+m.  Negative m
    counts via charge negation.
    """
    if not (x >= y >= 0 and z >= 0):
        raise ValueError("invalid type")
    mm = abs(m)
    if not _quasisplit_gates(x, y, z, mm):
        return 0
    low = (x - y - mm) // 2
    high = min(x + y - mm, z - mm - 2) // 2
    return max(0, high - low + 1)


def quasisplit_stabilized_count(x: int, y: int, z: int, m: int) -> int:
    """Stabilized graded multiplicity: integers t with
    x+y-m >= 2t >= x-y-m >= 0 and z >= m+2t+2."""
    if not (x >= y >= 0 and z >= 0):
        raise ValueError("invalid type")
    mm = abs(m)
    if z % 2 != mm % 2 or (x - y) % 2 != mm % 2:
        return 0
    if x - y - mm < 0:
        return 0
    count = 0
    t = (x - y - mm) // 2
    while 2 * t <= x + y - mm:
        if z >= mm + 2 * t + 2:
            count += 1
        t += 1
    return count


def quasisplit_stabilization_onset(x: int, y: int, z: int, m: int) -> int:
    """Level from which the graded multiplicity equals its stabilized value."""
    mm = abs(m)
    if quasisplit_stabilized_count(x, y, z, m) == 0:
        return 0
    t_top = min(x + y - mm, z - mm - 2)  # = 2 * t_max
    onset2 = t_top + mm + max(x + y, z - 2)
    assert onset2 % 2 == 0
    return onset2 // 2


def minrep_multiplicity_quasisplit(
    x: int, y: int, z: int, m: int, n: int
) -> tuple[int, int]:
    """Level-n graded multiplicity and its stabilized value."""
    value = quasisplit_level_multiplicity(x, y, z, m, n)
    return value, quasisplit_stabilized_count(x, y, z, m)


def compare_ps_vs_stabilized(
    max_type_sum: int = 12, max_charge: int = 4
) -> Report:
    """Exact equality sweep of the two quasi-split counting formulas.

    For every type x >= y >= 0, z >= 0 with x+y+z <= max_type_sum and
    0 <= m <= max_charge: the series count must equal the stabilized graded
    count, the graded series must be non-decreasing, and stabilization must
    begin exactly at the predicted onset.
    """
    checks = []
    for x in range(max_type_sum + 1):
        for y in range(x + 1):
            for z in range(max_type_sum - x - y + 1):
                if (x + y + z) % 2:
                    continue
                for m in range(max_charge + 1):
                    ps = ps_multiplicity_quasisplit(x, y, z, m)
                    stab = quasisplit_stabilized_count(x, y, z, m)
                    onset = quasisplit_stabilization_onset(x, y, z, m)
                    horizon = max(onset + 2, 2)
                    series = [
                        quasisplit_level_multiplicity(x, y, z, m, n)
                        for n in range(horizon + 1)
                    ]
                    ok = (
                        ps == stab
                        and series[onset] == stab
                        and (onset == 0 or series[onset - 1] != stab or stab == 0)
                        and all(
                            series[i] <= series[i + 1]
                            for i in range(len(series) - 1)
                        )
                        and series[-1] == stab
                    )
                    checks.append(
                        CheckResult(
                            f"type ({x},{y},{z}) m={m}",
                            "PASS" if ok else "FAIL",
                            f"count {ps} from level {onset}",
                            f"count {stab}, series {series}",
                        )
                    )
    return Report("series vs stabilized graded multiplicities", tuple(checks))


# --------------------------------------------------------------------------
# Lowest-type table fixtures.

_TABLES = {
    "split": ("split_table.tsv", group("A1", "A1", "A1", "A1"), 25),
    "quasisplit": ("quasisplit_table.tsv", group("C2", "A1"), 11),
}


def default_fixture_dir() -> Path:
    here = Path(__file__).resolve()
    candidates = [Path.cwd() / "fixtures", here.parents[2] / "fixtures"]
    for c in candidates:
        if c.is_dir():
            return c
    raise FixtureError(f"no fixtures directory in {[str(c) for c in candidates]}")


@dataclass(frozen=True)
class TableRow:
    row_id: int
    weight_csv: str
    expected_dim: int
    actual_dim: int

    @property
    def ok(self) -> bool:
        return self.expected_dim == self.actual_dim


def _parse_table(path: Path) -> list[tuple[int, tuple[int, ...], int]]:
    if not path.is_file():
        raise FixtureError(f"missing fixture {path}")
    rows = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise FixtureError(f"{path}:{lineno}: expected 3 tab-separated fields")
        try:
            row_id = int(fields[0])
            weight = tuple(int(x) for x in fields[1].split(","))
            dim = int(fields[2])
        except ValueError as exc:
            raise FixtureError(f"{path}:{lineno}: {exc}") from exc
        rows.append((row_id, weight, dim))
    return rows


def _table_weight(gs: GroupSpec, coords: tuple[int, ...]):
    parts = []
    pos = 0
    for rs in gs.factors:
        parts.append(coords[pos : pos + rs.ambient_dim])
        pos += rs.ambient_dim
    if pos != len(coords):
        raise FixtureError(f"weight {coords} has wrong length for {gs}")
    return make_weight(gs, parts)


def verify_table(which: str, fixtures_dir: Path | None = None) -> Report:
    """Check every printed lowest-type row against the dimension formula."""
    if which not in _TABLES:
        raise KeyError(f"unknown table {which!r}")
    filename, gs, expected_rows = _TABLES[which]
    directory = fixtures_dir if fixtures_dir is not None else default_fixture_dir()
    entries = _parse_table(directory / filename)
    by_row: dict[int, list[TableRow]] = {}
    for row_id, coords, dim in entries:
        actual = weight_dimension(gs, _table_weight(gs, coords))
        by_row.setdefault(row_id, []).append(
            TableRow(row_id, ",".join(str(c) for c in coords), dim, actual)
        )
    if sorted(by_row) != list(range(expected_rows)):
        raise FixtureError(
            f"{filename}: row ids must be exactly 0..{expected_rows - 1}"
        )
    checks = []
    for row_id in range(expected_rows):
        rows = by_row[row_id]
        ok = all(r.ok for r in rows)
        checks.append(
            CheckResult(
                f"{which} row {row_id}",
                "PASS" if ok else "FAIL",
                "; ".join(f"[{r.weight_csv}] -> {r.expected_dim}" for r in rows),
                "; ".join(f"[{r.weight_csv}] -> {r.actual_dim}" for r in rows),
            )
        )
    return Report(f"{which} lowest-type table", tuple(checks))


def verify_tables(fixtures_dir: Path | None = None) -> Report:
    split = verify_table("split", fixtures_dir)
    quasi = verify_table("quasisplit", fixtures_dir)
    return Report("lowest-type tables", split.checks + quasi.checks)
