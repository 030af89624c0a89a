"""Singular locus and incidence statistics of explicit line arrangements.

The scan intersects all d(d-1)/2 line pairs exactly, groups coincident
intersection points by their canonical coordinates, and recounts each
distinct point's multiplicity with a point-on-line test against every
arrangement line.  The recount is deliberately redundant: it revalidates
the grouping, and the combinatorial identities tying multiplicities,
point counts and meeting pairs together are checked on top.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .catalog import Arrangement, IncidenceProfile
from .projgeom import ProjPoint, line_intersection, point_on_line


@dataclass(frozen=True)
class SingularPoint:
    """A point where at least two arrangement lines meet."""

    location: ProjPoint
    multiplicity: int
    lines: tuple[int, ...]  # sorted indices into the arrangement


@dataclass(frozen=True)
class ScanResult:
    points: tuple[SingularPoint, ...]  # sorted by canonical point key
    meeting_pairs: int

    def tally(self) -> dict[int, int]:
        """Count distinct points by multiplicity: the t-vector of the scan."""
        out: dict[int, int] = {}
        for sp in self.points:
            out[sp.multiplicity] = out.get(sp.multiplicity, 0) + 1
        return out


def _scan_pairs(lines, pairs):
    groups: dict[ProjPoint, set[int]] = {}
    meeting = 0
    for i, j in pairs:
        pt = line_intersection(lines[i], lines[j])
        if pt is None:
            continue
        meeting += 1
        members = groups.get(pt)
        if members is None:
            groups[pt] = {i, j}
        else:
            members.add(i)
            members.add(j)
    return groups, meeting


def scan_arrangement(arr: Arrangement, threads: Optional[int] = None) -> ScanResult:
    """All distinct singular points of an arrangement, with multiplicities.

    The pair scan may run on several threads; grouping is a keyed merge on
    canonical point coordinates, so the result is identical for every
    schedule.  Each grouped point's multiplicity is recounted from scratch
    via point_on_line over all lines, which also validates the grouping.
    """
    lines = arr.lines
    d = len(lines)
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]

    if threads and threads > 1 and len(pairs) > 1:
        chunk = (len(pairs) + threads - 1) // threads
        batches = [pairs[k : k + chunk] for k in range(0, len(pairs), chunk)]
        groups: dict[ProjPoint, set[int]] = {}
        meeting = 0
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for local_groups, local_meeting in pool.map(
                lambda batch: _scan_pairs(lines, batch), batches
            ):
                meeting += local_meeting
                for pt, members in local_groups.items():
                    if pt in groups:
                        groups[pt].update(members)
                    else:
                        groups[pt] = members
    else:
        groups, meeting = _scan_pairs(lines, pairs)

    points = []
    for pt, members in groups.items():
        incident = tuple(k for k, line in enumerate(lines) if point_on_line(pt, line))
        if not set(incident) >= members:
            raise AssertionError("intersection grouping lost an incident line")
        points.append(SingularPoint(pt, len(incident), incident))
    points.sort(key=lambda sp: sp.location.sort_key())

    total_pairs = sum(sp.multiplicity * (sp.multiplicity - 1) // 2 for sp in points)
    if total_pairs != meeting:
        raise AssertionError("pair scan and per-point multiplicities disagree")
    return ScanResult(tuple(points), meeting)


def singular_points(arr: Arrangement, threads: Optional[int] = None) -> tuple[SingularPoint, ...]:
    """The distinct points where at least two lines meet, in canonical order."""
    return scan_arrangement(arr, threads=threads).points


def profile_from_arrangement(arr: Arrangement, threads: Optional[int] = None) -> IncidenceProfile:
    """Tally the scanned singular points into an incidence profile."""
    scan = scan_arrangement(arr, threads=threads)
    return IncidenceProfile(n=arr.n, d=arr.d, t=scan.tally())


def incidence_count(profile: IncidenceProfile) -> int:
    """I_d = sum over k of (k^2 - k) t_k, twice the number of meeting pairs."""
    return sum((k * k - k) * c for k, c in profile.t.items())


def valency_consistent(profile: IncidenceProfile, valency: int) -> bool:
    """Whether each of the d lines meeting exactly ``valency`` others fits I_d.

    Counting line meetings through point multiplicities, d lines each
    meeting ``valency`` others give I_d = d * valency.
    """
    if valency < 0:
        raise ValueError("valency must be nonnegative")
    return incidence_count(profile) == profile.d * valency


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple[IdentityCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def verify_identities(arr: Arrangement, threads: Optional[int] = None) -> IdentityReport:
    """Check the combinatorial identities tying the scan to its own tally.

    On the computed singular points: the multiplicity sum equals
    sum k*t_k, the number of distinct points equals sum t_k, and the
    binomial sum of multiplicities equals the number of meeting line
    pairs seen by the pair scan.
    """
    scan = scan_arrangement(arr, threads=threads)
    tally = scan.tally()

    mult_sum = sum(sp.multiplicity for sp in scan.points)
    checks = (
        IdentityCheck(
            "multiplicity_sum", mult_sum, sum(k * c for k, c in tally.items())
        ),
        IdentityCheck(
            "point_count", len(scan.points), sum(tally.values())
        ),
        IdentityCheck(
            "meeting_pairs",
            sum(sp.multiplicity * (sp.multiplicity - 1) // 2 for sp in scan.points),
            scan.meeting_pairs,
        ),
    )
    return IdentityReport(checks)
