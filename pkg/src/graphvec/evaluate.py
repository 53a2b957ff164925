"""Word-similarity evaluation against gold standards via Spearman's rho.

Gold files come in three canonical layouts (WordSim-353 CSV,
SimLex-999 TSV, MEN space-separated). System scores are cosine
similarities; out-of-vocabulary pairs stay in the ranking with score 0.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .model import Dataset, ModelStore


class UndefinedCorrelation(ValueError):
    """Zero rank variance on one side: correlation is undefined."""


@dataclass
class GoldStandard:
    name: str
    pairs: list[tuple[str, str, float]]
    scale: tuple[float, float]


@dataclass
class EvalResult:
    gold: str
    dataset: str
    rho: float
    pairs_total: int
    oov_left: int
    oov_right: int
    oov_both: int


def load_gold(path: str, format_id: str, name: str | None = None) -> GoldStandard:
    """Parse one of the canonical gold-standard file formats."""
    name = name or format_id
    pairs: list[tuple[str, str, float]] = []
    if format_id == "ws353":
        with open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.reader(f)
            header = next(reader)
            cols = [h.strip() for h in header]
            try:
                i1, i2, iscore = cols.index("Word 1"), cols.index("Word 2"), cols.index("Human (mean)")
            except ValueError:
                # variant header spelling without spaces
                try:
                    i1, i2, iscore = cols.index("Word1"), cols.index("Word2"), cols.index("Human(mean)")
                except ValueError:
                    raise ValueError(f"{path}: missing WS-353 header columns")
            for rowno, row in enumerate(reader, start=2):
                if not row:
                    continue
                pairs.append((row[i1].strip(), row[i2].strip(), _score(row[iscore], path, rowno)))
        scale = (0.0, 10.0)
    elif format_id == "simlex":
        with open(path, "r", encoding="utf-8") as f:
            header = f.readline().rstrip("\n").split("\t")
            try:
                i1, i2, iscore = header.index("word1"), header.index("word2"), header.index("SimLex999")
            except ValueError:
                raise ValueError(f"{path}: missing SimLex-999 header columns")
            for rowno, line in enumerate(f, start=2):
                if not line.strip():
                    continue
                row = line.rstrip("\n").split("\t")
                pairs.append((row[i1].strip(), row[i2].strip(), _score(row[iscore], path, rowno)))
        scale = (0.0, 10.0)
    elif format_id == "men":
        with open(path, "r", encoding="utf-8") as f:
            for rowno, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                parts = line.split()
                if len(parts) != 3:
                    raise ValueError(f"{path}:{rowno}: expected 'word1 word2 score'")
                pairs.append((parts[0], parts[1], _score(parts[2], path, rowno)))
        scale = (0.0, 50.0)
    else:
        raise ValueError(f"unknown gold format {format_id!r}")
    if len(pairs) < 2:
        raise ValueError(f"{path}: gold standard needs at least 2 pairs")
    return GoldStandard(name, pairs, scale)


def _score(raw: str, path: str, rowno: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{path}:{rowno}: non-numeric score {raw!r}")
    if value != value:  # NaN
        raise ValueError(f"{path}:{rowno}: NaN score")
    return value


def average_ranks(x) -> np.ndarray:
    """Fractional ranks (1-based), ties receive their average rank."""
    x = np.asarray(x, dtype=np.float64)
    order = np.argsort(x, kind="stable")
    ranks = np.empty(len(x))
    i = 0
    while i < len(x):
        j = i
        while j + 1 < len(x) and x[order[j + 1]] == x[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(x, y) -> float:
    """Spearman's rho: Pearson correlation of average-rank vectors."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise ValueError("need at least 2 observations")
    rx = average_ranks(x)
    ry = average_ranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    denom = np.sqrt((rx @ rx) * (ry @ ry))
    if denom == 0.0:
        raise UndefinedCorrelation("zero rank variance")
    return float(rx @ ry / denom)


def evaluate(scorer: Dataset | ModelStore, gold: GoldStandard) -> EvalResult:
    """Score every gold pair and correlate with the human scores.

    A Dataset scores with its own similarity; a ModelStore scores with
    the combined (summed) similarity across all of its datasets.
    """
    if isinstance(scorer, ModelStore):
        dataset_name = "combined"
        datasets = list(scorer.datasets.values())

        def score(w1, w2):
            return scorer.combined_similarity(w1, w2)[0]

        def oov(w):
            return all(d.is_oov(w) for d in datasets)
    else:
        dataset_name = scorer.name
        score = scorer.similarity
        oov = scorer.is_oov

    system = []
    human = []
    oov_left = oov_right = oov_both = 0
    for w1, w2, gold_score in gold.pairs:
        left_oov = oov(w1)
        right_oov = oov(w2)
        oov_left += left_oov
        oov_right += right_oov
        oov_both += left_oov and right_oov
        system.append(score(w1, w2))
        human.append(gold_score)
    rho = spearman(system, human)
    return EvalResult(
        gold=gold.name,
        dataset=dataset_name,
        rho=rho,
        pairs_total=len(gold.pairs),
        oov_left=oov_left,
        oov_right=oov_right,
        oov_both=oov_both,
    )


def report(results: list[EvalResult]) -> dict[str, str]:
    """Dataset x gold-standard rho matrix, as aligned text and CSV."""
    golds: list[str] = []
    datasets: list[str] = []
    for r in results:
        if r.gold not in golds:
            golds.append(r.gold)
        if r.dataset not in datasets:
            datasets.append(r.dataset)
    # combined row goes last regardless of arrival order
    if "combined" in datasets:
        datasets.remove("combined")
        datasets.append("combined")
    cell = {(r.dataset, r.gold): r for r in results}

    csv_buf = io.StringIO()
    writer = csv.writer(csv_buf, lineterminator="\n")
    writer.writerow(["dataset"] + golds)
    for d in datasets:
        writer.writerow(
            [d] + [_fmt(cell.get((d, g))) for g in golds]
        )

    width = max([len("dataset")] + [len(d) for d in datasets])
    gwidths = [max(len(g), 7) for g in golds]
    lines = [
        "  ".join(["dataset".ljust(width)] + [g.rjust(w) for g, w in zip(golds, gwidths)])
    ]
    for d in datasets:
        lines.append(
            "  ".join(
                [d.ljust(width)]
                + [_fmt(cell.get((d, g))).rjust(w) for g, w in zip(golds, gwidths)]
            )
        )
    lines.append("")
    lines.append("oov pairs (left/right/both of total):")
    for r in results:
        lines.append(
            f"  {r.dataset} x {r.gold}: {r.oov_left}/{r.oov_right}/{r.oov_both} of {r.pairs_total}"
        )
    return {"text": "\n".join(lines) + "\n", "csv": csv_buf.getvalue()}


def _fmt(result: EvalResult | None) -> str:
    if result is None:
        return ""
    return f"{result.rho:.4f}"
