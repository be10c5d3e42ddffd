import os

from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from abstractions.error import IError
from abstractions.service import IService

from constants.dataset_size import format_size
from constants.setups import setup_group

from dtos.responses.cell import CellResultDTO

from errors.bad_input_error import BadInputError

from models.feature import all_features, graph_from_labels

from utilities.files import FileUtility
from utilities.metrics import MetricsUtility


RESULT_COLUMNS = ["scm_id", "setup_id", "size", "method", "accuracy", "runtime_s", "certified", "n_failed_features"]
SCORE_COLUMNS = ["scm_id", "setup_id", "size", "method", "feature_type", "from", "to", "score", "prediction", "truth"]
TIMING_COLUMNS = ["scm_id", "setup_id", "size", "method", "runtime_s"]
AUC_COLUMNS = ["setup_id", "size", "method", "auc"]


def _size_key(size: str) -> float:
    return float("inf") if size == "inf" else float(size)


class ReportService(IService):
    """Result tables, pooled ROC areas, per-setup summaries and plot data of a benchmark run."""

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn
        self.file_utility = FileUtility(urn=self.urn)
        self.metrics_utility = MetricsUtility(urn=self.urn)

    def results_frame(self, cells: Sequence[CellResultDTO], record_runtime: bool) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "scm_id": cell.scm_id,
                    "setup_id": cell.setup_id,
                    "size": format_size(cell.size),
                    "method": cell.method,
                    "accuracy": np.nan if cell.accuracy is None else cell.accuracy,
                    "runtime_s": cell.runtime_s if record_runtime else np.nan,
                    "certified": cell.certified,
                    "n_failed_features": cell.n_failed_features,
                }
                for cell in cells
            ],
            columns=RESULT_COLUMNS
        )

    def scores_frame(self, cells: Sequence[CellResultDTO], n: int) -> pd.DataFrame:
        features = all_features(n)
        rows = []
        for cell in cells:
            if cell.failed:
                continue
            for feature, score, prediction, truth in zip(features, cell.scores, cell.predictions, cell.truth):
                rows.append({
                    "scm_id": cell.scm_id,
                    "setup_id": cell.setup_id,
                    "size": format_size(cell.size),
                    "method": cell.method,
                    "feature_type": feature.feature_type,
                    "from": feature.source,
                    "to": feature.target,
                    "score": score,
                    "prediction": bool(prediction),
                    "truth": bool(truth),
                })
        return pd.DataFrame(rows, columns=SCORE_COLUMNS)

    def timings_frame(self, cells: Sequence[CellResultDTO]) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {"scm_id": c.scm_id, "setup_id": c.setup_id, "size": format_size(c.size), "method": c.method, "runtime_s": c.runtime_s}
                for c in cells
            ],
            columns=TIMING_COLUMNS
        )

    def auc_frame(self, scores: pd.DataFrame) -> pd.DataFrame:
        """ROC area per (setup, size, method), pooled over the features of every SCM."""

        rows = []
        for (setup_id, size, method), group in scores.groupby(["setup_id", "size", "method"], sort=False):
            try:
                auc = self.metrics_utility.auc_roc(group["score"].to_numpy(), group["truth"].astype(bool).to_numpy())
            except IError as err:
                self.logger.warning(f"No ROC area for setup {setup_id}, size {size}, {method}: {err.response_message}")
                auc = np.nan
            rows.append({"setup_id": setup_id, "size": size, "method": method, "auc": auc})
        return pd.DataFrame(rows, columns=AUC_COLUMNS)

    def weak_baseline(self, scores: pd.DataFrame) -> float:
        """All-absent accuracy over the cohort, with each SCM's truth taken from one of its cells."""
        truths = []
        for _, group in scores.groupby("scm_id", sort=True):
            first = group[["setup_id", "size", "method"]].iloc[0]
            cell = group[(group["setup_id"] == first["setup_id"]) & (group["size"] == first["size"]) & (group["method"] == first["method"])]
            n = int(max(cell["from"].max(), cell["to"].max())) + 1
            truths.append(graph_from_labels(n, list(cell["truth"].astype(bool))))
        return self.metrics_utility.weak_baseline(truths)

    def accuracy_by_setup(self, results: pd.DataFrame) -> pd.DataFrame:
        """Mean and standard deviation of per-SCM accuracy; failed cells are counted, not averaged."""

        rows = []
        for (setup_id, size, method), group in results.groupby(["setup_id", "size", "method"], sort=False):
            accuracies = group["accuracy"].dropna()
            rows.append({
                "setup_id": int(setup_id),
                "group": setup_group(int(setup_id)),
                "size": size,
                "method": method,
                "mean_accuracy": accuracies.mean() if len(accuracies) else np.nan,
                "std_accuracy": accuracies.std(ddof=1) if len(accuracies) > 1 else np.nan,
                "n": int(len(accuracies)),
                "n_failed": int(group["accuracy"].isna().sum()),
            })
        return pd.DataFrame(rows)

    def by_size(self, frame: pd.DataFrame, value: str) -> pd.DataFrame:
        """Median and interquartile range across setups, per (size, method)."""

        rows = []
        for (size, method), group in frame.groupby(["size", "method"], sort=False):
            values = group[value].dropna().to_numpy()
            q1, median, q3 = np.percentile(values, [25, 50, 75]) if len(values) else (np.nan, np.nan, np.nan)
            rows.append({"size": size, "method": method, "median": median, "q1": q1, "q3": q3, "n_setups": int(len(values))})
        frame = pd.DataFrame(rows, columns=["size", "method", "median", "q1", "q3", "n_setups"])
        order = frame["size"].map(_size_key)
        return frame.assign(_order=order).sort_values(["_order", "method"], kind="stable").drop(columns="_order").reset_index(drop=True)

    def summary(self, by_setup: pd.DataFrame, auc: pd.DataFrame, weak_baseline: float, n_cells: int) -> Dict[str, Any]:

        merged = by_setup.merge(auc, on=["setup_id", "size", "method"], how="left")
        groups: List[Dict[str, Any]] = []
        for group_id, group in merged.groupby("group", sort=True):
            entries = []
            for row in group.sort_values(["setup_id", "size", "method"], kind="stable").itertuples(index=False):
                entries.append({
                    "setup_id": int(row.setup_id),
                    "size": row.size,
                    "method": row.method,
                    "mean_accuracy": self._number(row.mean_accuracy),
                    "std_accuracy": self._number(row.std_accuracy),
                    "n": int(row.n),
                    "n_failed": int(row.n_failed),
                    "auc": self._number(row.auc),
                })
            groups.append({"group": int(group_id), "entries": entries})

        return {
            "n_cells": n_cells,
            "error_bars": "standard deviation of per-SCM accuracy",
            "weak_baseline": self._number(weak_baseline),
            "groups": groups,
        }

    def _number(self, value: Optional[float]) -> Optional[float]:
        if value is None or not np.isfinite(value):
            return None
        return float(f"{value:.10g}")

    def summarize(self, results: pd.DataFrame, scores: pd.DataFrame, out_dir: str) -> Dict[str, str]:
        """Derived tables from results and scores: auc.csv, summary.json and plotdata/*.csv."""

        if results.empty:
            raise BadInputError(response_message="Cannot report on an empty result set.", response_key="error_empty_results")

        self.logger.debug(f"Summarizing {len(results)} cells into {out_dir}")
        results = results.assign(size=results["size"].astype(str))
        scores = scores.assign(size=scores["size"].astype(str))
        plot_dir = self.file_utility.ensure_directory(os.path.join(out_dir, "plotdata"))

        auc = self.auc_frame(scores)
        by_setup = self.accuracy_by_setup(results)
        weak_baseline = self.weak_baseline(scores) if not scores.empty else float("nan")

        paths = {
            "auc": os.path.join(out_dir, "auc.csv"),
            "summary": os.path.join(out_dir, "summary.json"),
            "accuracy_by_setup": os.path.join(plot_dir, "accuracy_by_setup.csv"),
            "auc_by_setup": os.path.join(plot_dir, "auc_by_setup.csv"),
            "accuracy_by_size": os.path.join(plot_dir, "accuracy_by_size.csv"),
            "auc_by_size": os.path.join(plot_dir, "auc_by_size.csv"),
        }
        self.file_utility.write_csv(auc, paths["auc"])
        self.file_utility.write_csv(by_setup, paths["accuracy_by_setup"])
        self.file_utility.write_csv(auc.assign(group=auc["setup_id"].map(setup_group)), paths["auc_by_setup"])
        self.file_utility.write_csv(self.by_size(by_setup, "mean_accuracy"), paths["accuracy_by_size"])
        self.file_utility.write_csv(self.by_size(auc, "auc"), paths["auc_by_size"])
        self.file_utility.write_json(self.summary(by_setup, auc, weak_baseline, len(results)), paths["summary"])
        self.logger.debug(f"Summarized {len(results)} cells into {out_dir}")
        return paths

    def emit_report(self, cells: Sequence[CellResultDTO], out_dir: str, record_runtime: bool = False, n: int = 5) -> Dict[str, str]:
        """Write every report file of a benchmark run and return their paths."""

        if not cells:
            raise BadInputError(response_message="Cannot report on an empty result set.", response_key="error_empty_results")

        self.file_utility.ensure_directory(out_dir)
        results = self.results_frame(cells, record_runtime)
        scores = self.scores_frame(cells, n)
        paths = {
            "results": os.path.join(out_dir, "results.csv"),
            "scores": os.path.join(out_dir, "scores.csv"),
            "timings": os.path.join(out_dir, "timings.csv"),
        }
        self.file_utility.write_csv(results, paths["results"])
        self.file_utility.write_csv(scores, paths["scores"])
        self.file_utility.write_csv(self.timings_frame(cells), paths["timings"])
        paths.update(self.summarize(results, scores, out_dir))
        return paths

    def report_from_directory(self, results_dir: str, out_dir: Optional[str] = None) -> Dict[str, str]:
        """Rebuild the derived tables from a run directory's results.csv and scores.csv."""
        results = self.file_utility.read_csv(os.path.join(results_dir, "results.csv"), dtype={"size": str})
        scores = self.file_utility.read_csv(os.path.join(results_dir, "scores.csv"), dtype={"size": str})
        return self.summarize(results, scores, out_dir or results_dir)
