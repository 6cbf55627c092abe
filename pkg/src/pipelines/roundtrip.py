"""
Round-Trip Pipeline - Taylor expansion and rebuilding of random nets.

For every trial a random cut-free PS R is generated, expanded along the
1-pseudo-experiment and along a k-heterogeneous pseudo-experiment with
k = basis(R), rebuilt from the two expansion terms and compared with R
up to isomorphism fixing the conclusions.

Trial rows are collected in a PyArrow table, aggregated by depth with
DuckDB and written next to a JSON summary.

Usage:
    python -m src.pipelines.roundtrip
"""

from __future__ import annotations

import json
import logging
import sys
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional

import duckdb
import pyarrow as pa
import pyarrow.parquet as pq

from src.config.configuration import config
from src.core.isomorphism import IsoMode, iso_check
from src.core.net import ProofNetError
from src.generators.random_net import GenParams, gen_random
from src.transforms.arithmetic import basis
from src.transforms.rebuild import rebuild_from_pair
from src.transforms.taylor import expand, make_k_heterogeneous, make_uniform, term_size

logger = logging.getLogger(__name__)

TRIAL_SCHEMA = pa.schema([
    ("trial", pa.int64()),
    ("seed", pa.int64()),
    ("depth", pa.int64()),
    ("boxes", pa.int64()),
    ("basis", pa.int64()),
    ("term_ports", pa.int64()),
    ("status", pa.string()),
    ("ok", pa.bool_()),
    ("seconds", pa.float64()),
    ("error", pa.string()),
])


@dataclass
class RoundTripSettings:
    """Configuration for the round-trip pipeline."""
    trials: int = config.roundtrip.trials
    seed: int = config.roundtrip.seed
    max_depth: int = config.roundtrip.max_depth
    max_term_ports: int = config.roundtrip.max_term_ports
    output_dir: str = config.roundtrip.output_dir


class TrialAggregator:
    """DuckDB aggregation of trial rows."""

    def __init__(self):
        self.conn = duckdb.connect(":memory:")

    def by_depth(self, table: pa.Table) -> pa.Table:
        if table.num_rows == 0:
            return pa.Table.from_pylist([], schema=pa.schema([
                ("depth", pa.int64()), ("trials", pa.int64()), ("passed", pa.int64()), ("avg_term_ports", pa.float64()),
            ]))
        self.conn.register("trials", table)
        return self.conn.execute("""
            SELECT depth,
                   COUNT(*)::BIGINT AS trials,
                   SUM(CASE WHEN ok THEN 1 ELSE 0 END)::BIGINT AS passed,
                   AVG(term_ports)::DOUBLE AS avg_term_ports
            FROM trials
            WHERE status <> 'skipped'
            GROUP BY depth
            ORDER BY depth
        """).fetch_arrow_table()

    def close(self) -> None:
        self.conn.close()


def run_trial(trial: int, seed: int, settings: RoundTripSettings) -> dict:
    """One round trip; never raises, the outcome is in ``status``."""
    started = time.perf_counter()
    net = gen_random(GenParams(max_depth=settings.max_depth, allow_cuts=False, seed=seed))
    k = basis(net)
    row = {
        "trial": trial,
        "seed": seed,
        "depth": net.depth(),
        "boxes": net.box_count(),
        "basis": k,
        "term_ports": 0,
        "status": "ok",
        "ok": False,
        "seconds": 0.0,
        "error": None,
    }
    e_het = make_k_heterogeneous(net, k)
    row["term_ports"] = term_size(net, e_het, 0)
    if row["term_ports"] > settings.max_term_ports:
        row["status"] = "skipped"
        return row

    try:
        term_one = expand(net, make_uniform(net, 1), 0).term
        term_het = expand(net, e_het, 0).term
        rebuilt = rebuild_from_pair(term_one, term_het)
        row["ok"] = iso_check(rebuilt, net, IsoMode.FIXED) is not None
        row["status"] = "ok" if row["ok"] else "mismatch"
    except ProofNetError as e:
        row["status"] = "error"
        row["error"] = f"{type(e).__name__}: {e}"
    row["seconds"] = time.perf_counter() - started
    return row


class RoundTripPipeline:
    """
    Round trips over seeded random nets.

    Example:
        >>> pipeline = RoundTripPipeline(RoundTripSettings(trials=10))
        >>> stats = pipeline.run()
        >>> print(f"{stats['passed']}/{stats['attempted']}")
    """

    def __init__(self, settings: Optional[RoundTripSettings] = None, write: bool = True):
        self.settings = settings or RoundTripSettings()
        self.output_dir = Path(self.settings.output_dir)
        self.write = write
        self.aggregator = TrialAggregator()

    def run(self) -> dict:
        logger.info("=" * 60)
        logger.info(f"Starting Round-Trip Pipeline ({self.settings.trials} trials, seed {self.settings.seed})")
        logger.info("=" * 60)

        start_time = datetime.now(timezone.utc)

        try:
            # Step 1: trials
            logger.info("Step 1: Running trials...")
            rows: List[dict] = []
            for trial in range(self.settings.trials):
                row = run_trial(trial, self.settings.seed + trial, self.settings)
                if row["status"] in ("mismatch", "error"):
                    logger.warning(f"Trial {trial} (seed {row['seed']}): {row['status']} {row['error'] or ''}")
                rows.append(row)
            table = pa.Table.from_pylist(rows, schema=TRIAL_SCHEMA)

            # Step 2: aggregation
            logger.info("Step 2: Aggregating by depth with DuckDB...")
            by_depth = self.aggregator.by_depth(table)

            skipped = sum(1 for r in rows if r["status"] == "skipped")
            passed = sum(1 for r in rows if r["ok"])
            stats = {
                "status": "success",
                "trials": len(rows),
                "attempted": len(rows) - skipped,
                "passed": passed,
                "failed": len(rows) - skipped - passed,
                "skipped": skipped,
                "by_depth": by_depth.to_pylist(),
                "output_dir": str(self.output_dir),
                "start_time": start_time.isoformat(),
                "end_time": datetime.now(timezone.utc).isoformat(),
            }

            # Step 3: outputs
            if self.write:
                logger.info("Step 3: Writing trial table and summary...")
                self.output_dir.mkdir(parents=True, exist_ok=True)
                pq.write_table(table, self.output_dir / "trials.parquet")
                self._write_summary(stats)

            logger.info("=" * 60)
            logger.info("Round-Trip Pipeline Completed")
            logger.info(f"Passed: {passed}/{stats['attempted']} (skipped {skipped})")
            logger.info("=" * 60)
            return stats

        except Exception as e:
            logger.error(f"Pipeline failed: {e}")
            raise
        finally:
            self.aggregator.close()

    def _write_summary(self, summary: dict) -> Path:
        output_path = self.output_dir / "_summary.json"
        output_path.write_text(json.dumps(summary, indent=2, default=str), encoding="utf-8")
        logger.info(f"Written summary: {output_path}")
        return output_path


def run_roundtrip_pipeline(
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    max_depth: Optional[int] = None,
    output_dir: Optional[str] = None,
    write: bool = True,
) -> dict:
    """Convenience function overriding the configured settings."""
    settings = RoundTripSettings()
    if trials is not None:
        settings.trials = trials
    if seed is not None:
        settings.seed = seed
    if max_depth is not None:
        settings.max_depth = max_depth
    if output_dir is not None:
        settings.output_dir = output_dir
    return RoundTripPipeline(settings, write=write).run()


if __name__ == "__main__":
    logging.basicConfig(
        level=config.app.log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    try:
        result = run_roundtrip_pipeline()
        print("\n✅ Pipeline completed successfully!")
        print(f"   Round trips: {result['passed']}/{result['attempted']} ≡")
        print(f"   Skipped: {result['skipped']}")
        print(f"   Output: {result['output_dir']}")
        if result["failed"]:
            sys.exit(1)
    except Exception as e:
        print(f"\n❌ Pipeline failed: {e}")
        sys.exit(1)
