"""CLI invocations whose reports are pinned as golden files."""

import os
from pathlib import Path

from pbc.cli import main

ROOT = Path(__file__).resolve().parent.parent
CONFIGS = ROOT / "configs"
REPORTS = Path(__file__).resolve().parent / "golden" / "reports"

CASES = {
    "single_blowup": [
        ["lattice"],
        ["exceptional"],
        ["transform", "--sheaf", "O_Y", "--ops", "pullback"],
        ["transform", "--sheaf", "fiber", "--ops", "minimal-lift; pseudo-twist-up:1"],
        ["transform", "--sheaf", "fiber", "--ops", "minimal-lift; pseudo-twist-down:1"],
        ["resolve", "--sheaf", "fiber"],
        ["rigidity", "--sheaf", "minimal_section"],
    ],
    "two_chain": [
        ["lattice"],
        ["exceptional"],
        ["transform", "--sheaf", "rank_two", "--ops", "shriek"],
        ["transform", "--sheaf", "tangent_fiber", "--ops", "minimal-lift; pseudo-twist-up:2"],
        ["resolve", "--sheaf", "tangent_fiber"],
        ["rigidity", "--sheaf", "rigid"],
    ],
    "three_points": [
        ["lattice"],
        ["exceptional"],
        ["transform", "--sheaf", "section", "--ops", "minimal-lift; twist:e1"],
        ["resolve", "--sheaf", "section"],
    ],
}


def case_id(config: str, argv: list[str]) -> str:
    parts = [config, argv[0]]
    if "--sheaf" in argv:
        parts.append(argv[argv.index("--sheaf") + 1])
    if "--ops" in argv:
        ops = argv[argv.index("--ops") + 1]
        parts.append("".join(c if c.isalnum() else "_" for c in ops.replace(" ", "")))
    return "__".join(parts)


def all_cases():
    for config, invocations in CASES.items():
        for argv in invocations:
            yield config, argv, REPORTS / f"{case_id(config, argv)}.json"


def run_case(config: str, argv: list[str], out: Path) -> int:
    return main([argv[0], "--config", str(CONFIGS / f"{config}.json"), *argv[1:], "--out", str(out)])


def update_requested() -> bool:
    return os.environ.get("PBC_UPDATE_GOLDEN") == "1"
