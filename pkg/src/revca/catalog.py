"""Append-only JSONL rule catalog and resumable sweep checkpoints.

Catalog files hold one JSON object per line so that long sweeps can append as
they go and parallel workers' outputs merge by concatenation.  A checkpoint
file records the next pending work unit of a sweep; both formats carry a
version field and are considered stable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .rules import RuleTable, rule_from_json, rule_to_json

CATALOG_VERSION = 1
CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class CatalogEntry:
    """One verified-or-pending rule: encodings, provenance, verification flags."""

    diameter: int
    anchor: int
    wolfram_decimal: str
    table_hex: str
    provenance: tuple[str, ...] = ()
    verified_debruijn: bool = False
    verified_periodic_to: int = 0
    created_at: str | None = None


def entry_for_rule(rt: RuleTable, provenance: tuple[str, ...] = (),
                   verified_debruijn: bool = False, verified_periodic_to: int = 0,
                   timestamp: bool = True) -> CatalogEntry:
    base = rule_to_json(rt, provenance)
    return CatalogEntry(
        diameter=base["diameter"],
        anchor=base["anchor"],
        wolfram_decimal=base["wolfram_decimal"],
        table_hex=base["table_hex"],
        provenance=tuple(provenance),
        verified_debruijn=verified_debruijn,
        verified_periodic_to=verified_periodic_to,
        created_at=datetime.now(timezone.utc).isoformat() if timestamp else None,
    )


def entry_to_dict(entry: CatalogEntry, with_timestamp: bool = True) -> dict:
    d = {
        "diameter": entry.diameter,
        "anchor": entry.anchor,
        "wolfram_decimal": entry.wolfram_decimal,
        "table_hex": entry.table_hex,
        "provenance": list(entry.provenance),
        "verified_debruijn": entry.verified_debruijn,
        "verified_periodic_to": entry.verified_periodic_to,
    }
    if with_timestamp and entry.created_at is not None:
        d["created_at"] = entry.created_at
    return d


def entry_from_dict(d: dict) -> CatalogEntry:
    rt, provenance = rule_from_json(d)  # validates the two encodings agree
    return CatalogEntry(
        diameter=rt.diameter,
        anchor=rt.anchor,
        wolfram_decimal=d["wolfram_decimal"],
        table_hex=d["table_hex"],
        provenance=provenance,
        verified_debruijn=bool(d.get("verified_debruijn", False)),
        verified_periodic_to=int(d.get("verified_periodic_to", 0)),
        created_at=d.get("created_at"),
    )


def entry_rule(entry: CatalogEntry) -> RuleTable:
    rt, _ = rule_from_json(entry_to_dict(entry))
    return rt


def append_entries(path: str | Path, entries: list[CatalogEntry]) -> None:
    """Serialize appends through one writer; one JSON object per line."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("a", encoding="utf-8") as f:
        for e in entries:
            f.write(json.dumps(entry_to_dict(e), sort_keys=True) + "\n")
        f.flush()
        os.fsync(f.fileno())


def read_catalog(path: str | Path) -> list[CatalogEntry]:
    out = []
    with Path(path).open(encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                out.append(entry_from_dict(json.loads(line)))
    return out


@dataclass(frozen=True)
class SweepCheckpoint:
    """Progress of an exhaustive sweep: the next work-unit ordinal to run.

    Format on disk: ``{"version": 1, "kind": "sweep", "diameter": D,
    "exclude_trivial": bool, "next_unit": int, "total_units": int}``.
    """

    diameter: int
    exclude_trivial: bool
    next_unit: int = 0
    total_units: int = 0

    @property
    def done(self) -> bool:
        return self.total_units > 0 and self.next_unit >= self.total_units


def save_checkpoint(path: str | Path, cp: SweepCheckpoint) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    tmp = p.with_suffix(p.suffix + ".tmp")
    tmp.write_text(json.dumps({
        "version": CHECKPOINT_VERSION,
        "kind": "sweep",
        "diameter": cp.diameter,
        "exclude_trivial": cp.exclude_trivial,
        "next_unit": cp.next_unit,
        "total_units": cp.total_units,
    }, sort_keys=True) + "\n", encoding="utf-8")
    tmp.replace(p)


def load_checkpoint(path: str | Path) -> SweepCheckpoint | None:
    p = Path(path)
    if not p.exists():
        return None
    d = json.loads(p.read_text(encoding="utf-8"))
    if d.get("version") != CHECKPOINT_VERSION or d.get("kind") != "sweep":
        raise ValueError(f"unrecognized checkpoint format in {p}")
    return SweepCheckpoint(
        diameter=int(d["diameter"]),
        exclude_trivial=bool(d["exclude_trivial"]),
        next_unit=int(d["next_unit"]),
        total_units=int(d["total_units"]),
    )
