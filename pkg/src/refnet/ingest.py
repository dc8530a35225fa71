"""Enrollment records to referral graphs, plus a synthetic cohort generator.

A referral edge runs from the intervention of one of a patient's trial
enrollments to the intervention of their next one. Only patients enrolled
in at least two distinct studies contribute edges.
"""

from __future__ import annotations

import csv
import enum
import io
import random
from collections import defaultdict
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Iterable, Literal, Mapping

from .errors import ConfigError, ParseError, TimestampError
from .graph import Edge

ENROLLMENT_HEADER = ("subject_id", "study_id", "intervention", "enrolled_at")
TIMESTAMP_FORMAT = "%Y-%m-%dT%H:%M:%S"

Pairing = Literal["consecutive", "all-ordered"]


@dataclass(frozen=True, order=True)
class EnrollmentRecord:
    subject_id: str
    study_id: str
    intervention: str
    enrolled_at: datetime


class InterventionCategory(enum.Enum):
    TARGETED = "Targeted"
    IMMUNOTHERAPY = "Immunotherapy"
    OTHER = "Other"


def classify_intervention(label: str) -> InterventionCategory:
    if label.startswith("T:"):
        return InterventionCategory.TARGETED
    if label.startswith("I:"):
        return InterventionCategory.IMMUNOTHERAPY
    return InterventionCategory.OTHER


def parse_timestamp(text: str, line: int | None = None) -> datetime:
    try:
        return datetime.strptime(text, TIMESTAMP_FORMAT)
    except ValueError:
        raise TimestampError(f"bad timestamp {text!r}, expected YYYY-MM-DDTHH:MM:SS", line=line) from None


def parse_enrollments(data: bytes | str) -> list[EnrollmentRecord]:
    """Parse enrollment CSV. Records come back in file order, fields trimmed."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    reader = csv.reader(io.StringIO(data))
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != ENROLLMENT_HEADER:
        raise ParseError(f"expected header {','.join(ENROLLMENT_HEADER)!r}, got {header!r}", line=1)
    records = []
    for row in reader:
        line = reader.line_num
        if not row:
            continue
        if len(row) != len(ENROLLMENT_HEADER):
            raise ParseError(f"expected {len(ENROLLMENT_HEADER)} fields, got {len(row)}", line=line)
        subject, study, intervention, stamp = (f.strip() for f in row)
        for name, value in zip(ENROLLMENT_HEADER, (subject, study, intervention, stamp)):
            if not value:
                raise ParseError(f"empty {name}", line=line)
        records.append(EnrollmentRecord(subject, study, intervention, parse_timestamp(stamp, line)))
    return records


def write_enrollments(records: Iterable[EnrollmentRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ENROLLMENT_HEADER)
    for r in records:
        writer.writerow((r.subject_id, r.study_id, r.intervention, r.enrolled_at.strftime(TIMESTAMP_FORMAT)))
    return buf.getvalue()


def _qualifying_histories(records: Iterable[EnrollmentRecord]) -> dict[str, list[EnrollmentRecord]]:
    """Per-subject time-ordered enrollments, for subjects with 2+ distinct studies.

    Duplicate (subject, study) rows keep the earliest enrollment. Subjects
    come back sorted by id so the result does not depend on input order.
    """
    earliest: dict[tuple[str, str], EnrollmentRecord] = {}
    for r in records:
        key = (r.subject_id, r.study_id)
        prev = earliest.get(key)
        if prev is None or (r.enrolled_at, r.intervention) < (prev.enrolled_at, prev.intervention):
            earliest[key] = r
    by_subject: dict[str, list[EnrollmentRecord]] = defaultdict(list)
    for r in earliest.values():
        by_subject[r.subject_id].append(r)
    histories = {}
    for subject in sorted(by_subject):
        rows = by_subject[subject]
        if len(rows) >= 2:
            histories[subject] = sorted(rows, key=lambda r: (r.enrolled_at, r.study_id))
    return histories


def build_referral_edges(records: Iterable[EnrollmentRecord], pairing: Pairing = "consecutive") -> list[Edge]:
    """Unit directed edges between the interventions of successive enrollments.

    ``pairing="all-ordered"`` links every earlier enrollment to every later
    one instead of only consecutive pairs.
    """
    if pairing not in ("consecutive", "all-ordered"):
        raise ValueError(f"unknown pairing {pairing!r}")
    edges = []
    for history in _qualifying_histories(records).values():
        labels = [r.intervention for r in history]
        if pairing == "consecutive":
            edges.extend(Edge(a, b) for a, b in zip(labels, labels[1:]))
        else:
            for i, a in enumerate(labels):
                edges.extend(Edge(a, b) for b in labels[i + 1 :])
    return edges


@dataclass(frozen=True)
class CohortSummary:
    subjects: int
    studies: int
    multi_trial_subjects: int
    multi_trial_studies: int
    enrollments: int
    interventions: int


def summarize_cohort(records: Iterable[EnrollmentRecord]) -> CohortSummary:
    """Cohort counts before and after the multi-trial filter.

    ``enrollments`` and ``interventions`` are counted among the filtered
    (multi-trial) subjects, after (subject, study) deduplication.
    """
    records = list(records)
    histories = _qualifying_histories(records)
    kept = [r for h in histories.values() for r in h]
    return CohortSummary(
        subjects=len({r.subject_id for r in records}),
        studies=len({r.study_id for r in records}),
        multi_trial_subjects=len(histories),
        multi_trial_studies=len({r.study_id for r in kept}),
        enrollments=len(kept),
        interventions=len({r.intervention for r in kept}),
    )


@dataclass(frozen=True)
class SyntheticConfig:
    """Parameters of the synthetic cohort generator.

    Each subject enrolls in ``randint(1, max_enrollments_per_subject)``
    distinct studies. The first intervention is drawn by popularity weight.
    Every later one repeats the previous intervention with probability
    ``stickiness``, is drawn by popularity from the previous intervention's
    group with probability ``group_affinity``, and is otherwise drawn by
    popularity from all interventions. Interventions missing from ``groups``
    form singleton groups.
    """

    n_subjects: int
    interventions: Mapping[str, float]
    max_enrollments_per_subject: int
    groups: Mapping[str, str] = field(default_factory=dict)
    stickiness: float = 0.0
    group_affinity: float = 0.0
    studies_per_intervention: int = 18
    start: str = "2015-01-01T00:00:00"

    def __post_init__(self):
        if not isinstance(self.n_subjects, int) or self.n_subjects < 0:
            raise ConfigError("n_subjects must be a non-negative integer")
        if not self.interventions:
            raise ConfigError("at least one intervention is required")
        for label, w in self.interventions.items():
            if not isinstance(label, str) or not label.strip():
                raise ConfigError(f"bad intervention label {label!r}")
            if not isinstance(w, (int, float)) or isinstance(w, bool) or not w > 0:
                raise ConfigError(f"popularity weight of {label!r} must be positive, got {w!r}")
        if not isinstance(self.max_enrollments_per_subject, int) or self.max_enrollments_per_subject < 1:
            raise ConfigError("max_enrollments_per_subject must be a positive integer")
        if self.studies_per_intervention < self.max_enrollments_per_subject:
            raise ConfigError("studies_per_intervention must be >= max_enrollments_per_subject")
        unknown = set(self.groups) - set(self.interventions)
        if unknown:
            raise ConfigError(f"groups name unknown interventions: {sorted(unknown)}")
        for name in ("stickiness", "group_affinity"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1]")
        if self.stickiness + self.group_affinity > 1.0:
            raise ConfigError("stickiness + group_affinity must not exceed 1")
        try:
            parse_timestamp(self.start)
        except TimestampError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_dict(cls, raw: Mapping) -> "SyntheticConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(raw) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        try:
            return cls(**raw)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    def to_dict(self) -> dict:
        return {
            "n_subjects": self.n_subjects,
            "interventions": dict(self.interventions),
            "max_enrollments_per_subject": self.max_enrollments_per_subject,
            "groups": dict(self.groups),
            "stickiness": self.stickiness,
            "group_affinity": self.group_affinity,
            "studies_per_intervention": self.studies_per_intervention,
            "start": self.start,
        }


def generate_synthetic_enrollments(seed: int, config: SyntheticConfig | Mapping) -> list[EnrollmentRecord]:
    """Deterministic synthetic cohort. Timestamps strictly increase per subject."""
    if not isinstance(config, SyntheticConfig):
        config = SyntheticConfig.from_dict(config)
    rng = random.Random(seed)
    labels = list(config.interventions)
    weights = [float(config.interventions[x]) for x in labels]
    group_of = {x: config.groups.get(x, x) for x in labels}
    members: dict[str, list[int]] = defaultdict(list)
    for i, x in enumerate(labels):
        members[group_of[x]].append(i)
    spi = config.studies_per_intervention
    width = len(str(len(labels) * spi))
    start = parse_timestamp(config.start)

    def draw(pool: list[int]) -> int:
        return rng.choices(pool, weights=[weights[i] for i in pool])[0]

    everyone = list(range(len(labels)))
    records = []
    for s in range(config.n_subjects):
        subject = f"P{s + 1:04d}"
        n = rng.randint(1, config.max_enrollments_per_subject)
        when = start + timedelta(days=rng.randrange(3 * 365), seconds=rng.randrange(86400))
        used: set[int] = set()
        current = draw(everyone)
        for k in range(n):
            if k:
                u = rng.random()
                if u < config.stickiness:
                    pass
                elif u < config.stickiness + config.group_affinity:
                    current = draw(members[group_of[labels[current]]])
                else:
                    current = draw(everyone)
                when += timedelta(days=rng.randint(14, 180), seconds=rng.randrange(86400))
            free = [j for j in range(spi) if current * spi + j not in used]
            study = current * spi + rng.choice(free)
            used.add(study)
            records.append(EnrollmentRecord(subject, f"S{study + 1:0{width}d}", labels[current], when))
    return records


# Table 1's sixteen intervention types. Two hubs carry 10x popularity;
# stickiness makes repeat enrollments in the same type (self-loops) common.
FIXTURE_INTERVENTIONS = {
    "Chemotherapy": 1,
    "Combined Modality": 1,
    "Drug Repurposing": 1,
    "I: Adoptive Cell Transfer": 1,
    "I: Anti Cancer Vaccine": 1,
    "I: Combined": 1,
    "I: MAbs Checkpoint": 10,
    "I: MAbs Co-Stimulatory": 1,
    "I: MAbs Targeting": 1,
    "I: Oncolytic Virus": 1,
    "I: Other": 1,
    "Radioconjugate": 1,
    "T: Antibody-Drug Conjugate": 1,
    "T: Combined": 1,
    "T: Monoclonal Antibody": 1,
    "T: Small Molecule": 10,
}
FIXTURE_HUBS = ("T: Small Molecule", "I: MAbs Checkpoint")
FIXTURE_SEED = 42

FIXTURE_CONFIG = SyntheticConfig(
    n_subjects=400,
    interventions=FIXTURE_INTERVENTIONS,
    max_enrollments_per_subject=4,
    stickiness=0.4,
)


def fixture_records() -> list[EnrollmentRecord]:
    return generate_synthetic_enrollments(FIXTURE_SEED, FIXTURE_CONFIG)
