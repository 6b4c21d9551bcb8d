"""Campaign orchestration: batches of verification checks with stable reports.

A campaign expands (rings x ns x checks) into independent tasks, runs them
(optionally in parallel processes), and assembles a report whose entries are
canonically sorted by (ring, scalar, n, check).  Everything in the JSON
document except the measured durations is therefore byte-identical across
runs and across parallelism degrees.

Tasks that would stream an oversized tensor cube are refused up front.  The
binding resource is the third boundary map, whose columns are indexed by the
cube L tensor L tensor L and whose rows by L tensor L: memory scales with
the (dim stl)^2 rows kept per echelon column, while the cube itself is only
walked.  A task therefore declares (dim stl)^2 rows, estimated cheaply as
(dim sl + dim HH_1)^2 before any heavy work starts.  The symbolic cocycle
check never builds a matrix and is exempt.  Checks that only exist for the
hat models (cocycle, sharp) are skipped -- not failed -- at n = 5.
"""

from __future__ import annotations

import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor

from .assoc import AssocAlgebra, hochschild_h1, load_ring_json
from .catalog import RING_BUILDERS, catalog_ring
from .domains import SCALARS
from .leibniz import build_sl
from .steinberg import (build_hat, build_stl, hl2_report, verify_calculus,
                        verify_cocycle, verify_sharp_relations)

CHECK_NAMES = ("cocycle", "calculus", "sharp", "homology")
DEFAULT_MAX_CUBE = 50_000

# hat models (and hence the cocycle and sharp checks) exist only here
HAT_NS = (3, 4)


class CampaignConfigError(ValueError):
    """A campaign configuration problem; the CLI maps this to exit code 2."""


def resolve_ring(token: str, scalar: str) -> AssocAlgebra:
    """Turn a --ring token (catalog name or JSON file path) into an algebra."""
    if scalar not in SCALARS:
        raise CampaignConfigError(
            f"unknown scalar {scalar!r}; have {sorted(SCALARS)}")
    if token in RING_BUILDERS:
        try:
            return catalog_ring(token, SCALARS[scalar])
        except ValueError as exc:
            raise CampaignConfigError(str(exc)) from None
    if os.path.exists(token):
        try:
            alg = load_ring_json(token)
        except (ValueError, json.JSONDecodeError) as exc:
            raise CampaignConfigError(f"bad ring file {token}: {exc}") from None
        if alg.dom.name != scalar:
            raise CampaignConfigError(
                f"ring file {token} is over scalar {alg.dom.name!r}, "
                f"not {scalar!r}")
        return alg
    raise CampaignConfigError(
        f"ring {token!r} is neither a catalog name ({sorted(RING_BUILDERS)}) "
        f"nor an existing file")


class CampaignConfig:
    """Validated request: which rings, which n, which checks, how to run."""

    __slots__ = ("rings", "ns", "checks", "out", "csv_out", "jobs", "max_cube")

    def __init__(self, rings, ns=(3, 4, 5), checks=("all",), out=None,
                 csv_out=None, jobs=1, max_cube=DEFAULT_MAX_CUBE):
        rings = [tuple(spec) for spec in rings]
        if not rings:
            raise CampaignConfigError("at least one ring is required")
        for spec in rings:
            if len(spec) != 2:
                raise CampaignConfigError(
                    f"ring spec must be (name_or_path, scalar), got {spec!r}")
            resolve_ring(*spec)  # validates token, scalar and the file itself
        ns = sorted(set(ns))
        if not ns or not set(ns) <= {3, 4, 5}:
            raise CampaignConfigError(f"ns must be a nonempty subset of "
                                      f"{{3, 4, 5}}, got {ns}")
        checks = list(checks)
        if not checks:
            raise CampaignConfigError("at least one check is required")
        bad = set(checks) - set(CHECK_NAMES) - {"all"}
        if bad:
            raise CampaignConfigError(f"unknown checks {sorted(bad)}; have "
                                      f"{list(CHECK_NAMES) + ['all']}")
        if "all" in checks:
            checks = list(CHECK_NAMES)
        checks = sorted(set(checks))
        if not isinstance(jobs, int) or jobs < 1:
            raise CampaignConfigError(f"jobs must be a positive int, got {jobs!r}")
        if not isinstance(max_cube, int) or max_cube < 1:
            raise CampaignConfigError(
                f"max_cube must be a positive int, got {max_cube!r}")
        self.rings = rings
        self.ns = ns
        self.checks = checks
        self.out = out
        self.csv_out = csv_out
        self.jobs = jobs
        self.max_cube = max_cube

    def to_dict(self) -> dict:
        # jobs is deliberately not echoed: the report must not depend on it
        return {
            "rings": [{"ring": token, "scalar": scalar}
                      for token, scalar in self.rings],
            "ns": list(self.ns),
            "checks": list(self.checks),
            "max_cube": self.max_cube,
        }


def declared_rows(n: int, ring: AssocAlgebra) -> int:
    """Rows of the widest boundary matrix a (ring, n) stl task streams.

    The third boundary has (dim stl)^2 rows; dim stl = dim sl + dim HH_1(R),
    and both summands come from cheap table-level computations, so the
    declaration costs nothing next to the stream itself.
    """
    d = build_sl(n, ring).dim + hochschild_h1(ring).dimension
    return d * d


def _entry(token, scalar, ring_name, n, check, status, computed, predicted,
           witness, duration):
    return {
        "ring": ring_name,
        "scalar": scalar,
        "n": n,
        "check": check,
        "status": status,
        "computed": computed,
        "predicted": predicted,
        "witness": witness,
        "duration_s": round(duration, 3),
    }


def _run_task(task):
    """Execute one (ring, n, check) task; top level so pools can pickle it."""
    token, scalar, n, check = task
    ring = resolve_ring(token, scalar)
    start = time.perf_counter()
    try:
        if check == "cocycle":
            rep = verify_cocycle(n, ring)
            computed = (f"J = 0 on {rep.triples_checked} triples"
                        if rep.ok else "J != 0")
            predicted, witness, ok = "J = 0", rep.witness, rep.ok
        elif check == "calculus":
            rep = verify_calculus(build_stl(n, ring))
            total = sum(rep.checks.values())
            computed = (f"{total} instances hold" if rep.ok
                        else "identity violated")
            predicted, witness, ok = "all calculus identities", rep.witness, rep.ok
        elif check == "sharp":
            model = build_stl(n, ring)
            rep = verify_sharp_relations(build_hat(n, ring, model=model))
            total = sum(rep.relations.values())
            computed = (f"{total} relations hold; perfect; "
                        f"center contains cocycle space" if rep.ok
                        else "relation or structure violated")
            predicted = "presented relations + perfect + central kernel"
            witness, ok = rep.witness, rep.ok
        else:  # homology
            rep = hl2_report(n, ring)
            computed = rep.computed.describe()
            predicted = rep.predicted.describe()
            witness = None if rep.ok else {"stl_dim": rep.stl_dim}
            ok = rep.ok
        status = "passed" if ok else "failed"
    except Exception as exc:  # keep the triple in the report even on a crash
        status, computed, predicted = "failed", None, None
        witness = {"error": f"{type(exc).__name__}: {exc}"}
    duration = time.perf_counter() - start
    return _entry(token, scalar, ring.name, n, check, status, computed,
                  predicted, witness, duration)


class CampaignReport:
    """Sorted entries plus a status summary; knows how to serialize itself."""

    __slots__ = ("config", "entries", "summary")

    def __init__(self, config, entries, wall_s):
        entries = sorted(
            entries, key=lambda e: (e["ring"], e["scalar"], e["n"], e["check"]))
        counts = {s: 0 for s in ("passed", "failed", "refused", "skipped")}
        for e in entries:
            counts[e["status"]] += 1
        self.config = config
        self.entries = entries
        self.summary = {
            "total": len(entries),
            **counts,
            "exit_code": 1 if counts["failed"] or counts["refused"] else 0,
            "duration_s": round(wall_s, 3),
        }

    @property
    def exit_code(self) -> int:
        return self.summary["exit_code"]

    @property
    def ok(self) -> bool:
        return self.exit_code == 0

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "entries": list(self.entries),
            "summary": dict(self.summary),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    def to_csv(self) -> str:
        """Summary table in the three-column shape (n, predicted, computed),
        one row per homology entry, keyed by ring."""
        buf = io.StringIO()
        buf.write("ring,scalar,n,predicted,computed\n")
        for e in self.entries:
            if e["check"] != "homology":
                continue
            buf.write(f"{e['ring']},{e['scalar']},{e['n']},"
                      f"{e['predicted']},{e['computed']}\n")
        return buf.getvalue()

    def lines(self):
        """Human-readable one-liners, same order as the entries."""
        for e in self.entries:
            bits = [f"{e['ring']}@{e['scalar']} n={e['n']} {e['check']}:",
                    e["status"]]
            if e["computed"] is not None:
                bits.append(f"computed={e['computed']}")
            if e["check"] == "homology" and e["predicted"] is not None:
                bits.append(f"predicted={e['predicted']}")
            if e["witness"]:
                bits.append(f"witness={e['witness']}")
            bits.append(f"({e['duration_s']}s)")
            yield " ".join(bits)
        s = self.summary
        yield (f"{s['total']} checks: {s['passed']} passed, "
               f"{s['failed']} failed, {s['refused']} refused, "
               f"{s['skipped']} skipped")

    def __repr__(self):
        s = self.summary
        return (f"CampaignReport({s['total']} entries, {s['passed']} passed, "
                f"exit_code={s['exit_code']})")


def run_campaign(config: CampaignConfig) -> CampaignReport:
    started = time.perf_counter()
    entries = []
    runnable = []
    seen = set()
    for token, scalar in config.rings:
        ring = resolve_ring(token, scalar)
        cube = None
        for n in config.ns:
            for check in config.checks:
                key = (token, scalar, n, check)
                if key in seen:
                    continue
                seen.add(key)
                if check in ("cocycle", "sharp") and n not in HAT_NS:
                    entries.append(_entry(
                        token, scalar, ring.name, n, check, "skipped", None,
                        None,
                        {"reason": f"{check} is defined for n in {HAT_NS} only"},
                        0.0))
                    continue
                if check != "cocycle":
                    if cube is None:
                        cube = {m: declared_rows(m, ring) for m in config.ns}
                    if cube[n] > config.max_cube:
                        entries.append(_entry(
                            token, scalar, ring.name, n, check, "refused",
                            None, None,
                            {"reason": f"declared boundary matrix of "
                                       f"{cube[n]} rows exceeds bound "
                                       f"{config.max_cube}"},
                            0.0))
                        continue
                runnable.append(key)
    if config.jobs > 1 and len(runnable) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            entries.extend(pool.map(_run_task, runnable))
    else:
        entries.extend(_run_task(task) for task in runnable)
    report = CampaignReport(config, entries, time.perf_counter() - started)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(report.to_json())
    if config.csv_out:
        with open(config.csv_out, "w") as fh:
            fh.write(report.to_csv())
    return report
