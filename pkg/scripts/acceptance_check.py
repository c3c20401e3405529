#!/usr/bin/env python3
"""Acceptance check: runs every suite at the acceptance bounds and reports status."""

import asyncio
import sys
import time
from fractions import Fraction
from pathlib import Path

# Add project root to path so we can import src
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.suites import Command, RunConfig, dispatch


def _runs() -> list[tuple[str, RunConfig]]:
    runs = []
    for n in range(1, 5):
        runs.append((f"check-algebra n={n}", RunConfig(Command.CHECK_ALGEBRA, n=n)))
    for n in range(1, 4):
        for p in range(1, 5):
            runs.append((f"report n={n} p={p}", RunConfig(Command.REPORT, n=n, p=p)))
    for r in (2, 3):
        runs.append((f"lemma3 r={r}", RunConfig(Command.LEMMA3, r=r, samples=0)))
    runs.append(("lemma3 r=4 sampled", RunConfig(Command.LEMMA3, r=4, samples=50, seed=7)))
    for r in range(1, 5):
        t = tuple(Fraction(1) for _ in range(r - 1)) + (Fraction(4 - (r - 1)),)
        runs.append((f"lemma3 r={r} rank at sum t = s^2", RunConfig(Command.LEMMA3, s=Fraction(2), t=t)))
    for p in range(1, 7):
        runs.append((f"q2 p={p}", RunConfig(Command.Q2, p=p)))
    return runs


async def check(name: str, cfg: RunConfig) -> bool:
    started = time.perf_counter()
    try:
        report = await dispatch(cfg)
    except Exception as e:
        print(f"  [ERR]  {name:40s} ({e})")
        return False
    elapsed = time.perf_counter() - started
    mark = "[OK]  " if report.passed else "[FAIL]"
    print(f"  {mark} {name:40s} ({elapsed:.1f}s)")
    return report.passed


async def main() -> None:
    print("qfock acceptance check")
    print("=" * 70)

    results = [await check(name, cfg) for name, cfg in _runs()]

    print("=" * 70)
    ok_count = sum(results)
    total = len(results)
    if ok_count == total:
        print(f"All {total} suites passed!")
    else:
        print(f"{ok_count}/{total} suites passed. {total - ok_count} suite(s) failed.")

    sys.exit(0 if ok_count == total else 1)


if __name__ == "__main__":
    asyncio.run(main())
