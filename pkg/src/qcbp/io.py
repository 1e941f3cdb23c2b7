"""Serialization: Matrix Market files for matrices and vectors, a
key/value manifest tying an instance together, and history CSVs.

Matrix Market output uses the dense "array" flavor (column-major, real
general) with 17 significant digits so values round-trip exactly through
text. Coordinate-format files are accepted on read and densified.

Manifest schema (UTF-8 text, one `key = value` per line, `#` comments):

    format_version = 1
    matrix = <path to A, relative to the manifest>
    y = <path to y>
    eta = <positive float>
    ground_truth = <path>        # optional
    noise = <path>               # optional
    seed = <int>                 # optional
    generator = d=<int> p_s=<float> p_m=<float>   # optional, informational

History CSV: header ``iter,r_p,r_d,gap,objective``, one row per record,
infinite gaps written as the literal token ``inf``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .instance import GeneratorParams, ProblemInstance, check
from .solver import IterationRecord, SolveReport

FORMAT_VERSION = 1
MANIFEST_NAME = "instance.manifest"


class MatrixMarketError(ValueError):
    """Malformed Matrix Market content; the message names the line."""


@dataclass(frozen=True)
class ProblemManifest:
    manifest_path: Path
    matrix_path: Path
    y_path: Path
    eta: float
    ground_truth_path: Path | None = None
    noise_path: Path | None = None
    seed: int | None = None
    generator: str | None = None
    format_version: int = FORMAT_VERSION


def write_matrix(M: np.ndarray, path) -> None:
    """Write a dense matrix (or 1-D vector as a column) in array format."""
    M = np.asarray(M, dtype=np.float64)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("%%MatrixMarket matrix array real general\n")
        fh.write(f"{M.shape[0]} {M.shape[1]}\n")
        for j in range(M.shape[1]):
            for i in range(M.shape[0]):
                fh.write(f"{M[i, j]:.17g}\n")


def read_matrix(path) -> np.ndarray:
    """Read an array- or coordinate-format real Matrix Market file."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"matrix file not found: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise MatrixMarketError(f"{path}: line 1: empty file")
    header = lines[0].split()
    if (
        len(header) < 4
        or not header[0].lower().startswith("%%matrixmarket")
        or header[1].lower() != "matrix"
        or header[2].lower() not in ("array", "coordinate")
        or header[3].lower() != "real"
    ):
        raise MatrixMarketError(
            f"{path}: line 1: expected header "
            f"'%%MatrixMarket matrix array|coordinate real general', got {lines[0]!r}"
        )
    layout = header[2].lower()
    if len(header) >= 5 and header[4].lower() != "general":
        raise MatrixMarketError(
            f"{path}: line 1: only 'general' symmetry is supported, got {header[4]!r}"
        )

    # skip comments / blanks to the size line
    idx = 1
    while idx < len(lines) and (not lines[idx].strip() or lines[idx].lstrip().startswith("%")):
        idx += 1
    if idx >= len(lines):
        raise MatrixMarketError(f"{path}: line {idx + 1}: missing size line")
    size_line, size_lineno = lines[idx].split(), idx + 1
    idx += 1

    if layout == "array":
        if len(size_line) != 2:
            raise MatrixMarketError(
                f"{path}: line {size_lineno}: array size line must be 'rows cols'"
            )
        rows, cols = int(size_line[0]), int(size_line[1])
        values = []
        for lineno, line in enumerate(lines[idx:], start=idx + 1):
            if not line.strip() or line.lstrip().startswith("%"):
                continue
            try:
                values.append(float(line))
            except ValueError:
                raise MatrixMarketError(
                    f"{path}: line {lineno}: expected a real number, got {line!r}"
                ) from None
        if len(values) != rows * cols:
            raise MatrixMarketError(
                f"{path}: expected {rows * cols} entries, found {len(values)}"
            )
        return np.asarray(values).reshape((cols, rows)).T

    if len(size_line) != 3:
        raise MatrixMarketError(
            f"{path}: line {size_lineno}: coordinate size line must be 'rows cols nnz'"
        )
    rows, cols, nnz = (int(t) for t in size_line)
    M = np.zeros((rows, cols))
    count = 0
    for lineno, line in enumerate(lines[idx:], start=idx + 1):
        if not line.strip() or line.lstrip().startswith("%"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise MatrixMarketError(
                f"{path}: line {lineno}: expected 'i j value', got {line!r}"
            )
        try:
            i, j, val = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise MatrixMarketError(
                f"{path}: line {lineno}: malformed coordinate entry {line!r}"
            ) from None
        M[i - 1, j - 1] = val
        count += 1
    if count != nnz:
        raise MatrixMarketError(f"{path}: expected {nnz} entries, found {count}")
    return M


def read_vector(path) -> np.ndarray:
    M = read_matrix(path)
    if 1 not in M.shape:
        raise MatrixMarketError(f"{path}: expected a vector, got shape {M.shape}")
    return M.reshape(-1)


def write_instance(
    instance: ProblemInstance,
    directory,
    generator: GeneratorParams | None = None,
) -> ProblemManifest:
    """Write an instance into a directory and return its manifest.

    Produces A.mtx, y.mtx, optional ground_truth.mtx / noise.mtx, and
    the manifest file. Round-trips exactly through read_instance.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_matrix(instance.A, directory / "A.mtx")
    write_matrix(instance.y, directory / "y.mtx")
    gt_path = noise_path = None
    if instance.ground_truth_x is not None:
        gt_path = directory / "ground_truth.mtx"
        write_matrix(instance.ground_truth_x, gt_path)
    if instance.noise is not None:
        noise_path = directory / "noise.mtx"
        write_matrix(instance.noise, noise_path)

    gen_desc = None
    if generator is not None:
        gen_desc = f"d={generator.d} p_s={generator.p_s!r} p_m={generator.p_m!r}"

    manifest_path = directory / MANIFEST_NAME
    with open(manifest_path, "w", encoding="utf-8") as fh:
        fh.write(f"format_version = {FORMAT_VERSION}\n")
        fh.write("matrix = A.mtx\n")
        fh.write("y = y.mtx\n")
        fh.write(f"eta = {instance.eta:.17g}\n")
        if gt_path is not None:
            fh.write("ground_truth = ground_truth.mtx\n")
        if noise_path is not None:
            fh.write("noise = noise.mtx\n")
        if instance.seed is not None:
            fh.write(f"seed = {instance.seed}\n")
        if gen_desc is not None:
            fh.write(f"generator = {gen_desc}\n")
    return ProblemManifest(
        manifest_path=manifest_path,
        matrix_path=directory / "A.mtx",
        y_path=directory / "y.mtx",
        eta=instance.eta,
        ground_truth_path=gt_path,
        noise_path=noise_path,
        seed=instance.seed,
        generator=gen_desc,
    )


def _parse_manifest(path: Path) -> dict[str, str]:
    fields: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(
                    f"{path}: line {lineno}: expected 'key = value', got {line!r}"
                )
            key, _, value = line.partition("=")
            fields[key.strip()] = value.strip()
    return fields


def read_instance(manifest_path) -> ProblemInstance:
    """Load and validate an instance from its manifest file."""
    manifest_path = Path(manifest_path)
    if not manifest_path.exists():
        raise FileNotFoundError(f"manifest not found: {manifest_path}")
    fields = _parse_manifest(manifest_path)
    for required in ("format_version", "matrix", "y", "eta"):
        if required not in fields:
            raise ValueError(f"{manifest_path}: missing required key '{required}'")
    version = int(fields["format_version"])
    if version != FORMAT_VERSION:
        raise ValueError(
            f"{manifest_path}: unsupported format_version {version}"
        )
    base = manifest_path.parent
    A = read_matrix(base / fields["matrix"])
    y = read_vector(base / fields["y"])
    eta = float(fields["eta"])
    gt = read_vector(base / fields["ground_truth"]) if "ground_truth" in fields else None
    noise = read_vector(base / fields["noise"]) if "noise" in fields else None
    seed = int(fields["seed"]) if "seed" in fields else None
    return check(
        ProblemInstance(
            A=A, y=y, eta=eta, ground_truth_x=gt, noise=noise, seed=seed
        )
    )


def write_history(report: SolveReport, path) -> None:
    """Write per-iteration certificates as CSV, encoding +inf as ``inf``."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iter", "r_p", "r_d", "gap", "objective"])
        for rec in report.history:
            writer.writerow(
                [
                    rec.iteration,
                    f"{rec.r_p:.17g}",
                    f"{rec.r_d:.17g}",
                    "inf" if math.isinf(rec.gap) else f"{rec.gap:.17g}",
                    f"{rec.objective:.17g}",
                ]
            )


def read_history(path) -> list[IterationRecord]:
    """Inverse of write_history."""
    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            records.append(
                IterationRecord(
                    iteration=int(row["iter"]),
                    r_p=float(row["r_p"]),
                    r_d=float(row["r_d"]),
                    gap=float(row["gap"]),
                    objective=float(row["objective"]),
                )
            )
    return records
