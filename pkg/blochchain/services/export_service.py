"""
Plot-ready artifacts: long-format CSV, summary/fit JSON, gnuplot stub
"""
import json
import math
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import pandas as pd
import structlog

from blochchain import __version__
from blochchain.exceptions import ConfigurationError
from blochchain.schemas.analytics import FitResult
from blochchain.schemas.observables import TrajectoryRecord
from blochchain.schemas.run_config import RunConfig
from blochchain.schemas.sweeps import SweepResult

logger = structlog.get_logger()

PathLike = Union[str, Path]

SWEEP_COLUMNS = ["param", "l", "delta_n", "delta_n_approx", "edge_ok"]

GNUPLOT_TEMPLATE = """\
# Occupation probabilities rho_kk(t) from {csv_name}
set datafile separator ","
set xlabel "t"
set ylabel "node"
set yrange [1:{n_nodes}]
set palette defined (0 "white", 1 "yellow", 2 "black")
set view map
plot "{csv_name}" every ::1 using 1:2:3 with image notitle
"""


def _finite_or_none(value: Any) -> Any:
    """JSON has no NaN/inf; write them as null"""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: _finite_or_none(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite_or_none(item) for item in value]
    return value


def _write_json(payload: Dict[str, Any], path: Optional[PathLike]) -> str:
    text = json.dumps(_finite_or_none(payload), indent=2, sort_keys=True, allow_nan=False) + "\n"
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="\n")
        logger.info("File written", path=str(path))
    return text


def _write_csv(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8", na_rep="")
    logger.info("File written", path=str(path), rows=len(frame))
    return path


class ExportService:
    """Serializes trajectories, sweeps and fits"""

    def occupations_frame(self, record: TrajectoryRecord) -> pd.DataFrame:
        """One row per snapshot × node with columns t, node, prob"""
        n_snapshots, n_nodes = record.occupations.shape
        return pd.DataFrame(
            {
                "t": np.repeat(record.times, n_nodes),
                "node": np.tile(np.arange(1, n_nodes + 1), n_snapshots),
                "prob": record.occupations.ravel(),
            }
        )

    def write_occupations_csv(self, record: TrajectoryRecord, path: PathLike) -> Path:
        return _write_csv(self.occupations_frame(record), path)

    def summary_payload(
        self,
        record: TrajectoryRecord,
        config: Optional[RunConfig] = None,
        half_period_excursion: Optional[float] = None,
    ) -> Dict[str, Any]:
        lowest = int(np.argmin(record.centers))
        payload = {
            "centers": {"t": record.times.tolist(), "n_c": record.centers.tolist()},
            "center_min": {
                "t": float(record.times[lowest]),
                "n_c": float(record.centers[lowest]),
            },
            "variances": record.variances.tolist(),
            "displacements": {str(l): value for l, value in sorted(record.displacements.items())},
            "half_period_excursion": half_period_excursion,
            "edge_guard": record.edge_guard.model_dump(mode="json"),
            "trace_drift": record.trace_drift,
            "provenance": {
                "package_version": __version__,
                "chain": record.chain.model_dump(mode="json"),
                "profile": record.profile.model_dump(mode="json"),
                "packet": record.packet.model_dump(mode="json"),
                "integrator": record.integrator.model_dump(mode="json"),
            },
        }
        if config is not None:
            payload["config"] = config.model_dump(mode="json")
        return payload

    def write_summary_json(
        self,
        record: TrajectoryRecord,
        path: PathLike,
        config: Optional[RunConfig] = None,
        half_period_excursion: Optional[float] = None,
    ) -> Path:
        _write_json(self.summary_payload(record, config, half_period_excursion), path)
        return Path(path)

    def sweep_frame(self, result: SweepResult) -> pd.DataFrame:
        """Long format: one row per grid value and recorded period"""
        records = []
        for row in result.rows:
            for l in result.spec.record_periods:
                approx = row.approximations.get(l) if row.approximations else None
                records.append(
                    {
                        "param": row.value,
                        "l": l,
                        "delta_n": row.displacements.get(l, np.nan),
                        "delta_n_approx": np.nan if approx is None else approx,
                        "edge_ok": row.edge_ok,
                    }
                )
        return pd.DataFrame.from_records(records, columns=SWEEP_COLUMNS)

    def write_sweep_csv(self, result: SweepResult, path: PathLike) -> Path:
        return _write_csv(self.sweep_frame(result), path)

    def read_sweep_csv(self, path: PathLike) -> pd.DataFrame:
        try:
            frame = pd.read_csv(path)
        except FileNotFoundError:
            raise ConfigurationError(f"Sweep file not found: {path}")
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise ConfigurationError(f"Sweep file {path} is not a valid CSV: {e}")

        missing = [column for column in ("param", "l", "delta_n") if column not in frame.columns]
        if missing:
            raise ConfigurationError(f"Sweep file {path} lacks columns: {', '.join(missing)}")
        return frame

    def write_fit_json(self, fit: FitResult, path: Optional[PathLike] = None) -> str:
        payload = fit.model_dump(mode="json")
        payload["per_l"] = {str(l): list(values) for l, values in sorted(fit.per_l.items())}
        return _write_json(payload, path)

    def write_gnuplot_script(self, csv_path: PathLike, script_path: PathLike, n_nodes: int) -> Path:
        script_path = Path(script_path)
        script_path.write_text(
            GNUPLOT_TEMPLATE.format(csv_name=Path(csv_path).name, n_nodes=n_nodes),
            encoding="utf-8",
            newline="\n",
        )
        return script_path
