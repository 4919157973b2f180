"""Serialization of classification results, reference-table fixtures, errata.

Fixture file format (one published table per file, `k{k}_p{p}.table`):

    p=<p>
    k=<k>
    <rank>,<orbit size>,<flattened digits, space-separated>
    ...

Zeros are stored as the digit 0 even where the source printed a
placeholder dot.  Tables whose early rows were printed as matrix slices
are stored in flatten order; for symmetric tensors the two layouts carry
identical digit sequences, so the conversion is the identity.  Rows are
stored verbatim otherwise, including suspected errata; the sidecar
`k{k}_p{p}.errata` (a JSON list) records row references and
classifications, and the single documented restoration (a size printed
with an interior space) is noted there.  Verification logic never
auto-corrects fixtures.

Sidecar entry fields: id, classification, rows (0-based indices into the
table rows; empty for prose notes), fields (subset of "orbit_size",
"canonical", "prose"), printed, reason.

Structured output is canonical JSON: keys sorted lexicographically,
integers base-10, two-space indent, trailing newline.  Percentages are
derived from the counts (the source rounds them), never stored as
authoritative.  Wall-time is volatile and excluded unless requested, so
repeated runs emit byte-identical documents.
"""

import json
import os
from dataclasses import dataclass
from pathlib import Path

from ._version import __version__
from .errors import FixtureError, MissingFixtureError

SCHEMA_VERSION = "1"

FORMATS = ("structured", "tabular", "markdown", "latex")

_RECORD_SCHEMA = {
    "type": "object",
    "required": ["rank", "orbit_size", "stabilizer_size", "canonical"],
    "additionalProperties": False,
    "properties": {
        "rank": {"type": ["integer", "null"], "minimum": 0},
        "orbit_size": {"type": "integer", "minimum": 1},
        "stabilizer_size": {"type": "integer", "minimum": 1},
        "canonical": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}

# JSON schema of the structured document (timing is optional, see emit)
DOCUMENT_SCHEMA = {
    "type": "object",
    "required": [
        "schema_version", "parameters", "max_symmetric_rank", "stratum_counts",
        "stratum_percentages", "undecomposable_count", "records",
        "undecomposable_records", "errata", "provenance",
    ],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "parameters": {
            "type": "object",
            "required": ["p", "order", "group_order", "symmetric_space"],
            "additionalProperties": False,
            "properties": {
                "p": {"type": "integer", "minimum": 2},
                "order": {"type": "integer", "enum": [3, 4]},
                "group_order": {"type": "integer", "minimum": 6},
                "symmetric_space": {"type": "integer", "minimum": 16},
            },
        },
        "max_symmetric_rank": {"type": "integer", "minimum": 0},
        "stratum_counts": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "stratum_percentages": {"type": "array", "items": {"type": "number"}},
        "undecomposable_count": {"type": "integer", "minimum": 0},
        "records": {"type": "array", "items": _RECORD_SCHEMA},
        "undecomposable_records": {"type": "array", "items": _RECORD_SCHEMA},
        "errata": {"type": "array", "items": {"type": "object"}},
        "provenance": {
            "type": "object",
            "required": ["artifact", "version"],
            "additionalProperties": False,
            "properties": {
                "artifact": {"const": "symcanon"},
                "version": {"type": "string"},
            },
        },
        "timing": {
            "type": "object",
            "required": ["wall_seconds"],
            "properties": {"wall_seconds": {"type": "number", "minimum": 0}},
        },
    },
}

ERRATUM_SUSPECTED = "ERRATUM-SUSPECTED"
MISMATCH = "MISMATCH"


@dataclass(frozen=True)
class FixtureRow:
    index: int
    rank: int
    orbit_size: int
    canonical: tuple


@dataclass(frozen=True)
class ErratumNote:
    id: str
    classification: str
    rows: tuple
    fields: tuple
    printed: str
    reason: str


@dataclass(frozen=True)
class FixtureTable:
    p: int
    order: int
    rows: tuple
    errata: tuple


@dataclass(frozen=True)
class Discrepancy:
    classification: str  # ERRATUM-SUSPECTED or MISMATCH
    p: int
    order: int
    erratum_id: object   # str or None
    rank: object         # int or None
    field: str
    printed: str
    computed: str
    note: str

    def line(self):
        where = f"p={self.p} k={self.order}"
        if self.rank is not None:
            where += f" rank={self.rank}"
        tag = f" [{self.erratum_id}]" if self.erratum_id else ""
        return (
            f"{self.classification}{tag} {where} {self.field}: "
            f"printed {self.printed}; computed {self.computed}. {self.note}"
        )


# ---------------------------------------------------------------------------
# Fixture access
# ---------------------------------------------------------------------------

def fixtures_dir(explicit=None):
    if explicit is not None:
        return Path(explicit)
    env = os.environ.get("SYMCANON_FIXTURES")
    if env:
        return Path(env)
    return Path(__file__).parent / "data" / "fixtures"


def list_fixtures(directory=None):
    """Sorted (p, k) pairs with a stored table."""
    d = fixtures_dir(directory)
    out = []
    for path in d.glob("k*_p*.table"):
        k_part, p_part = path.stem.split("_")
        out.append((int(p_part[1:]), int(k_part[1:])))
    return sorted(out, key=lambda pk: (pk[1], pk[0]))


def load_fixture(p, k, directory=None):
    d = fixtures_dir(directory)
    path = d / f"k{k}_p{p}.table"
    if not path.exists():
        raise MissingFixtureError(f"no reference table stored for p={p}, k={k} in {d}")
    rows = []
    header = {}
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" in line and "," not in line:
            key, _, value = line.partition("=")
            header[key.strip()] = value.strip()
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise FixtureError(f"{path.name}: expected rank,size,digits, got {raw!r}")
        try:
            rank = int(parts[0])
            size = int(parts[1])
            digits = tuple(int(s) for s in parts[2].split())
        except ValueError as exc:
            raise FixtureError(f"{path.name}: bad row {raw!r}: {exc}") from None
        rows.append(FixtureRow(len(rows), rank, size, digits))
    if header.get("p") != str(p) or header.get("k") != str(k):
        raise FixtureError(f"{path.name}: header does not declare p={p}, k={k}")
    n = 1 << k
    for row in rows:
        if len(row.canonical) != n:
            raise FixtureError(
                f"{path.name}: row {row.index} has {len(row.canonical)} digits, expected {n}"
            )
        if any(not 0 <= d < p for d in row.canonical):
            raise FixtureError(f"{path.name}: row {row.index} has digits outside 0..{p - 1}")
        if row.rank < 0 or row.orbit_size < 1:
            raise FixtureError(f"{path.name}: row {row.index} has a bad rank or size")
    return FixtureTable(p, k, tuple(rows), _load_errata(path))


def _load_errata(table_path):
    path = table_path.with_suffix(".errata")
    if not path.exists():
        return ()
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path.name}: invalid JSON: {exc}") from None
    notes = []
    for entry in raw:
        try:
            notes.append(
                ErratumNote(
                    id=entry["id"],
                    classification=entry.get("classification", ERRATUM_SUSPECTED),
                    rows=tuple(entry.get("rows", ())),
                    fields=tuple(entry["fields"]),
                    printed=entry["printed"],
                    reason=entry["reason"],
                )
            )
        except KeyError as exc:
            raise FixtureError(f"{path.name}: entry missing key {exc}") from None
    return tuple(notes)


# ---------------------------------------------------------------------------
# Diff against a fixture
# ---------------------------------------------------------------------------

def _fmt_digits(digits):
    return " ".join(str(d) for d in digits)


def _fmt_record(rec):
    return f"size {rec.orbit_size}, canonical {_fmt_digits(rec.canonical)}"


def diff(report, fixture):
    """Row-level comparison of a classification against a stored table.

    Rows flagged by the errata sidecar are expected to disagree; each
    sidecar entry yields one ERRATUM-SUSPECTED discrepancy carrying the
    computed replacement rows.  Any disagreement on an unflagged row (or
    an unaccounted orbit) is a MISMATCH, i.e. a build failure.
    """
    if (report.p, report.order) != (fixture.p, fixture.order):
        raise ValueError("report and fixture parameters differ")

    flagged = {}
    for note in fixture.errata:
        for idx in note.rows:
            flagged.setdefault(idx, set()).update(note.fields)

    by_rank = {}
    for rec in report.records:
        by_rank.setdefault(rec.rank, []).append(rec)

    mismatches = []
    matched = {}   # fixture row index -> record
    taken = set()  # id() of records already paired

    def mismatch(rank, field, printed, computed, note):
        mismatches.append(
            Discrepancy(MISMATCH, report.p, report.order, None, rank, field,
                        printed, computed, note)
        )

    # rows with a trusted canonical column pair up by canonical form
    deferred = []
    for row in fixture.rows:
        fields = flagged.get(row.index, set())
        if "canonical" in fields:
            deferred.append(row)
            continue
        rec = next(
            (r for r in by_rank.get(row.rank, [])
             if r.canonical == row.canonical and id(r) not in taken),
            None,
        )
        if rec is None:
            mismatch(row.rank, "canonical", _fmt_digits(row.canonical),
                     "no such orbit", "table row has no computed counterpart")
            continue
        taken.add(id(rec))
        matched[row.index] = rec
        if rec.orbit_size != row.orbit_size and "orbit_size" not in fields:
            mismatch(row.rank, "orbit_size", str(row.orbit_size),
                     str(rec.orbit_size),
                     f"canonical {_fmt_digits(row.canonical)}")

    # rows whose canonical column is flagged pair up by size, else by position
    for row in deferred:
        pool = [r for r in by_rank.get(row.rank, []) if id(r) not in taken]
        fields = flagged[row.index]
        if "orbit_size" in fields:
            rec = pool[0] if pool else None
        else:
            rec = next((r for r in pool if r.orbit_size == row.orbit_size), None)
            if rec is None:
                mismatch(row.rank, "orbit_size", str(row.orbit_size),
                         "no orbit of this size",
                         "flagged canonical, but the size matches no computed orbit")
        if rec is not None:
            taken.add(id(rec))
            matched[row.index] = rec

    # computed orbits never claimed by any table row
    for rank in sorted(by_rank):
        for rec in by_rank[rank]:
            if id(rec) not in taken:
                mismatch(rank, "row", "absent", _fmt_record(rec),
                         "computed orbit missing from the table")

    # one discrepancy per sidecar entry, carrying the computed replacements
    errata = []
    for note in fixture.errata:
        if note.fields == ("prose",):
            computed = f"the section's parameters are p={fixture.p}, k={fixture.order}"
        else:
            parts = []
            for idx in note.rows:
                row = fixture.rows[idx]
                rec = matched.get(idx)
                repl = _fmt_record(rec) if rec is not None else "unmatched"
                parts.append(f"row {idx} (rank {row.rank}): {repl}")
            computed = "; ".join(parts)
        errata.append(
            Discrepancy(
                note.classification, fixture.p, fixture.order, note.id,
                fixture.rows[note.rows[0]].rank if note.rows else None,
                "+".join(note.fields), note.printed, computed, note.reason,
            )
        )
    return errata + mismatches


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

def _percentages(counts, space):
    return [round(100.0 * c / space, 2) for c in counts]


def build_document(report, include_timing=False, directory=None):
    """Assemble the serializable document for a classification report."""
    space = report.p ** (report.order + 1)
    try:
        errata = [
            {
                "id": note.id,
                "classification": note.classification,
                "rows": list(note.rows),
                "fields": list(note.fields),
                "printed": note.printed,
                "reason": note.reason,
            }
            for note in load_fixture(report.p, report.order, directory).errata
        ]
    except MissingFixtureError:
        errata = []
    doc = {
        "schema_version": SCHEMA_VERSION,
        "parameters": {
            "p": report.p,
            "order": report.order,
            "group_order": report.group_order,
            "symmetric_space": space,
        },
        "max_symmetric_rank": report.max_rank,
        "stratum_counts": list(report.stratum_counts),
        "stratum_percentages": _percentages(report.stratum_counts, space),
        "undecomposable_count": report.undecomposable_count,
        "records": [_record_dict(rec) for rec in report.records],
        "undecomposable_records": [
            _record_dict(rec) for rec in report.undecomposable_records
        ],
        "errata": errata,
        "provenance": {"artifact": "symcanon", "version": __version__},
    }
    if include_timing:
        doc["timing"] = {"wall_seconds": report.timing_seconds}
    return doc


def _record_dict(rec):
    return {
        "rank": rec.rank,
        "orbit_size": rec.orbit_size,
        "stabilizer_size": rec.stabilizer_size,
        "canonical": list(rec.canonical),
    }


def emit(report, format="structured", include_timing=False, directory=None):
    """Render a classification report in one of the supported formats."""
    if format == "md":
        format = "markdown"
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    if format == "structured":
        doc = build_document(report, include_timing, directory)
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if format == "tabular":
        return _emit_tabular(report)
    if format == "markdown":
        return _emit_markdown(report)
    return _emit_latex(report)


def parse_structured(text):
    return json.loads(text)


def _emit_tabular(report):
    lines = [f"p={report.p}", f"k={report.order}"]
    for rec in report.records:
        lines.append(f"{rec.rank},{rec.orbit_size},{_fmt_digits(rec.canonical)}")
    for rec in report.undecomposable_records:
        lines.append(f"U,{rec.orbit_size},{_fmt_digits(rec.canonical)}")
    return "\n".join(lines) + "\n"


def _emit_markdown(report):
    space = report.p ** (report.order + 1)
    lines = [
        f"# Symmetric 2^{report.order} tensors over F_{report.p}",
        "",
        f"group order {report.group_order}, {space} symmetric tensors, "
        f"maximum symmetric rank {report.max_rank}",
        "",
        "| rank | number | % |",
        "|---:|---:|---:|",
    ]
    for r, (count, pct) in enumerate(
        zip(report.stratum_counts, _percentages(report.stratum_counts, space))
    ):
        lines.append(f"| {r} | {count} | {pct:.2f} |")
    lines += [
        "",
        "| symmetric rank | orbit size | canonical form (flattened) |",
        "|---:|---:|---|",
    ]
    for rec in report.records:
        lines.append(f"| {rec.rank} | {rec.orbit_size} | {_fmt_digits(rec.canonical)} |")
    if report.undecomposable_records:
        lines += [
            "",
            f"No symmetric decomposition ({report.undecomposable_count} tensors; "
            "orbit structure computed here, not part of the published tables):",
            "",
            "| symmetric rank | orbit size | canonical form (flattened) |",
            "|---:|---:|---|",
        ]
        for rec in report.undecomposable_records:
            lines.append(f"| - | {rec.orbit_size} | {_fmt_digits(rec.canonical)} |")
    return "\n".join(lines) + "\n"


def _emit_latex(report):
    lines = [
        r"\begin{array}{ccc}",
        r"\text{symmetric rank} & \text{orbit size} & \text{canonical form (flattened)} \\",
        r"\toprule",
    ]
    for rec in report.records:
        digits = " & ".join(str(d) for d in rec.canonical)
        lines.append(rf"{rec.rank} & {rec.orbit_size} & \begin{{matrix}} {digits} \end{{matrix}} \\")
    for rec in report.undecomposable_records:
        digits = " & ".join(str(d) for d in rec.canonical)
        lines.append(rf"\text{{--}} & {rec.orbit_size} & \begin{{matrix}} {digits} \end{{matrix}} \\")
    lines.append(r"\bottomrule")
    lines.append(r"\end{array}")
    return "\n".join(lines) + "\n"
