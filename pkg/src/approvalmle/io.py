"""On-disk formats: dataset documents, parameter files, reports.

Two dataset encodings are supported and round-trip losslessly:

* JSON document with keys ``alternatives`` (list of ids), ``voters`` (list of
  ids), ``instances`` (list of ``{"id":..., "ballots": {voter_id: [alt_id]}}``)
  and an optional ``ground_truth`` map from instance id to a list of
  alternative ids.
* Long-form CSV with header ``instance_id,voter_id,alternative_id,approved``
  and one 0/1 row per (instance, voter, alternative) cell, for spreadsheet
  interoperability.  Declaration order follows first appearance.  Ground truth
  does not fit this shape and travels in the JSON format only.

In the JSON format a ballots map may omit voters; unless strict mode is on,
omitted voters get an empty ballot and a warning.
"""

from __future__ import annotations

import csv
import json
import warnings
from pathlib import Path

import numpy as np

from .model import GroundTruth, ParamVector, Profile


class DatasetFormatError(ValueError):
    """The file cannot be interpreted as a dataset document."""


def _truth_tuple(profile: Profile, truth_map: dict) -> GroundTruth:
    known = {inst.id for inst in profile.instances}
    unknown = set(truth_map) - known
    if unknown:
        raise DatasetFormatError(
            f"ground_truth names unknown instances: {sorted(unknown)}"
        )
    index = {a.id: a.index for a in profile.alternatives}
    truths = []
    for inst in profile.instances:
        ids = truth_map.get(inst.id, [])
        try:
            truths.append(frozenset(index[aid] for aid in ids))
        except KeyError as exc:
            raise DatasetFormatError(
                f"ground_truth of instance {inst.id!r} names unknown alternative {exc}"
            ) from None
    return tuple(truths)


def load_dataset(path, strict: bool = False):
    """Read a dataset file (JSON or CSV by extension).

    Returns ``(profile, ground_truth_or_None)``.
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return load_profile_csv(path), None
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DatasetFormatError(f"{path} is not valid JSON: {exc}") from None
    return parse_dataset(doc, strict=strict)


def parse_dataset(doc: dict, strict: bool = False):
    """Build a profile (and optional ground truth) from a dataset document."""
    if not isinstance(doc, dict):
        raise DatasetFormatError("dataset document must be a JSON object")
    for key in ("alternatives", "voters", "instances"):
        if key not in doc:
            raise DatasetFormatError(f"dataset document lacks the {key!r} key")

    alt_ids = [str(a) for a in doc["alternatives"]]
    voter_ids = [str(v) for v in doc["voters"]]
    index = {aid: j for j, aid in enumerate(alt_ids)}

    instance_ids = []
    instance_ballots = []
    for entry in doc["instances"]:
        zid = str(entry["id"])
        ballots_map = entry.get("ballots", {})
        unknown_voters = set(ballots_map) - set(voter_ids)
        if unknown_voters:
            raise DatasetFormatError(
                f"instance {zid!r} has ballots for undeclared voters "
                f"{sorted(unknown_voters)}"
            )
        missing = [v for v in voter_ids if v not in ballots_map]
        if missing:
            if strict:
                raise DatasetFormatError(
                    f"instance {zid!r} omits ballots for voters {missing}"
                )
            warnings.warn(
                f"instance {zid!r} omits ballots for {len(missing)} voter(s); "
                "treating them as empty",
                stacklevel=2,
            )
        ballots = []
        for vid in voter_ids:
            approved = ballots_map.get(vid, [])
            try:
                ballots.append(frozenset(index[str(a)] for a in approved))
            except KeyError as exc:
                raise DatasetFormatError(
                    f"instance {zid!r}, voter {vid!r} approves unknown "
                    f"alternative {exc}"
                ) from None
        instance_ids.append(zid)
        instance_ballots.append(ballots)

    profile = Profile.build(alt_ids, voter_ids, instance_ballots, instance_ids)
    truths = None
    if "ground_truth" in doc and doc["ground_truth"] is not None:
        truths = _truth_tuple(profile, doc["ground_truth"])
    return profile, truths


def dataset_document(profile: Profile, ground_truth: GroundTruth | None = None) -> dict:
    """Serialize a profile (and optional ground truth) to a dataset document."""
    alt_ids = list(profile.alternative_ids)
    doc = {
        "alternatives": alt_ids,
        "voters": list(profile.voters),
        "instances": [
            {
                "id": inst.id,
                "ballots": {
                    vid: [alt_ids[j] for j in sorted(ballot)]
                    for vid, ballot in zip(profile.voters, inst.ballots)
                },
            }
            for inst in profile.instances
        ],
    }
    if ground_truth is not None:
        doc["ground_truth"] = {
            inst.id: [alt_ids[j] for j in sorted(truth)]
            for inst, truth in zip(profile.instances, ground_truth)
        }
    return doc


def save_dataset(path, profile: Profile, ground_truth: GroundTruth | None = None):
    path = Path(path)
    if path.suffix.lower() == ".csv":
        if ground_truth is not None:
            raise DatasetFormatError(
                "the long-form CSV carries ballots only; write ground truth "
                "to the JSON format"
            )
        save_profile_csv(path, profile)
        return
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dataset_document(profile, ground_truth), fh, indent=2)
        fh.write("\n")


CSV_HEADER = ["instance_id", "voter_id", "alternative_id", "approved"]


def save_profile_csv(path, profile: Profile) -> None:
    """Write the full dense (instance, voter, alternative) grid as 0/1 rows."""
    alt_ids = list(profile.alternative_ids)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for inst in profile.instances:
            for vid, ballot in zip(profile.voters, inst.ballots):
                for j, aid in enumerate(alt_ids):
                    writer.writerow([inst.id, vid, aid, int(j in ballot)])


def load_profile_csv(path) -> Profile:
    """Read a long-form CSV; declaration order is order of first appearance."""
    alt_ids: list = []
    voter_ids: list = []
    instance_ids: list = []
    cells: dict = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise DatasetFormatError(
                f"expected CSV header {CSV_HEADER}, got {header}"
            )
        for row in reader:
            if not row:
                continue
            if len(row) != 4:
                raise DatasetFormatError(f"malformed CSV row: {row}")
            zid, vid, aid, approved = row
            if approved not in ("0", "1"):
                raise DatasetFormatError(
                    f"approved must be 0 or 1, got {approved!r} in row {row}"
                )
            if zid not in instance_ids:
                instance_ids.append(zid)
            if vid not in voter_ids:
                voter_ids.append(vid)
            if aid not in alt_ids:
                alt_ids.append(aid)
            cells[(zid, vid, aid)] = approved == "1"
    if not cells:
        raise DatasetFormatError("empty CSV dataset")
    index = {aid: j for j, aid in enumerate(alt_ids)}
    instance_ballots = [
        [
            frozenset(
                index[aid] for aid in alt_ids if cells.get((zid, vid, aid), False)
            )
            for vid in voter_ids
        ]
        for zid in instance_ids
    ]
    return Profile.build(alt_ids, voter_ids, instance_ballots, instance_ids)


def load_params(path) -> ParamVector:
    """Read initial parameters from a JSON file with keys p, q, t."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    missing = [key for key in ("p", "q", "t") if key not in doc]
    if missing:
        raise DatasetFormatError(f"parameter file lacks keys {missing}")
    return ParamVector(
        np.asarray(doc["p"], dtype=float),
        np.asarray(doc["q"], dtype=float),
        np.asarray(doc["t"], dtype=float),
    )


def save_params(path, params: ParamVector) -> None:
    doc = {"p": params.p.tolist(), "q": params.q.tolist(), "t": params.t.tolist()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_assignment(path):
    """Read instance->set assignments for evaluation.

    Accepts a run report (uses its ``estimates``), a dataset document
    (uses its ``ground_truth``), or a bare ``{instance_id: [alt_id]}`` map.
    Returns ``(assignment_map, alternative_ids_or_None)``.
    """
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise DatasetFormatError(f"{path} does not contain a JSON object")
    if "estimates" in doc:
        return dict(doc["estimates"]), doc.get("alternatives")
    if "instances" in doc and "ground_truth" in doc:
        return dict(doc["ground_truth"]), list(map(str, doc.get("alternatives", []))) or None
    if "ground_truth" in doc:
        return dict(doc["ground_truth"]), doc.get("alternatives")
    return {str(k): list(v) for k, v in doc.items()}, None
