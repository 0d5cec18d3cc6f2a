"""Harmonic regression of token surprisal with unit- or detection-scaled terms.

The model stacks all tokens of the fitted documents:

    y_t ~ baseline(t) + sum_k [ b1_k sin(2 pi k t / U_t) + b2_k cos(2 pi k t / U_t) ]

where U_t is the scaling length at token t and t counts positions within
the scaler's scope: within-unit position for unit scalers, within-document
position for the document scaler and for detection-derived scalers (whose
U is the document's largest hint/validated period). The baseline block is
intercept + relative position t/U_t (clipped to [0, 1]) + log(1 + t); it is
a stand-in for unpublished predictor sets and is recorded in every report.

Harmonic strength per order k is the amplitude A_k = sqrt(b1_k^2 + b2_k^2).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.stats

SCALERS = ("edu", "sentence", "paragraph", "document", "aps_hint", "aps_period")
BASELINE_COLUMNS = ("intercept", "rel_pos", "log1p_pos")


@dataclass(frozen=True)
class HRDesign:
    """Design spec: number of harmonics K and the scaling-length source.

    K=0 drops the harmonic block entirely (baseline-only model).
    """

    K: int = 10
    scaler: str = "document"
    baseline: tuple[str, ...] = BASELINE_COLUMNS

    def __post_init__(self):
        if self.K < 0:
            raise ValueError("K must be >= 0")
        if self.scaler not in SCALERS:
            raise ValueError(f"unknown scaler {self.scaler!r}; expected one of {SCALERS}")
        if tuple(self.baseline) != BASELINE_COLUMNS:
            raise ValueError(f"unsupported baseline spec {self.baseline!r}")

    def column_names(self) -> list[str]:
        names = list(self.baseline)
        for k in range(1, self.K + 1):
            names += [f"sin_{k}", f"cos_{k}"]
        return names


@dataclass
class HRFit:
    """OLS estimates with standard errors, t tests, and harmonic amplitudes."""

    columns: list[str]
    beta: np.ndarray
    stderr: np.ndarray
    tstat: np.ndarray
    pvalue: np.ndarray
    amplitudes: dict[int, float]
    mse: float
    n_obs: int
    dof: int

    def coefficient(self, name: str) -> float:
        return float(self.beta[self.columns.index(name)])

    def harmonic_rows(self) -> list[list]:
        """Rows (k, A_k, beta label, coef, p) mirroring the significance tables."""
        rows = []
        for k in sorted(self.amplitudes):
            for label in (f"sin_{k}", f"cos_{k}"):
                i = self.columns.index(label)
                beta_name = f"beta{1 if label.startswith('sin') else 2}_{k}"
                rows.append([k, self.amplitudes[k], beta_name, float(self.beta[i]),
                             float(self.pvalue[i])])
        return rows


def _token_scopes(doc, design: HRDesign, result=None):
    """Per-token (t, U) arrays for one document under the design's scaler."""
    n = doc.n
    if design.scaler == "document":
        return np.arange(n, dtype=float), np.full(n, float(n))
    if design.scaler in ("aps_hint", "aps_period"):
        if result is None:
            raise ValueError(f"scaler {design.scaler!r} requires detection results")
        if design.scaler == "aps_hint":
            pool = [h.period for h in result.hints]
        else:
            pool = [vp.refined_period for vp in result.periods]
        if not pool:
            raise ValueError(
                f"document {doc.doc_id!r} has no "
                f"{'hints' if design.scaler == 'aps_hint' else 'validated periods'}; "
                f"scaler {design.scaler!r} unresolvable"
            )
        return np.arange(n, dtype=float), np.full(n, float(max(pool)))
    if doc.units is None or design.scaler not in doc.units:
        raise ValueError(
            f"document {doc.doc_id!r} lacks {design.scaler!r} annotations; scaler unresolvable"
        )
    bounds = list(doc.units[design.scaler])
    if bounds[-1] < n:  # trailing tokens form an implicit final unit
        bounds.append(n)
    t = np.empty(n)
    u = np.empty(n)
    start = 0
    for end in bounds:
        t[start:end] = np.arange(end - start, dtype=float)
        u[start:end] = float(end - start)
        start = end
    return t, u


def build_design_matrix(docs, results, design: HRDesign):
    """Stack (X, y) over all tokens of docs; returns (X, y, column names).

    `results` may be None unless the design uses a detection-derived scaler;
    when given it is matched to docs by doc_id. Warns when 2K reaches the
    smallest scaling length (harmonic columns alias beyond that).
    """
    docs = list(docs)
    if not docs:
        raise ValueError("no documents to build a design matrix from")
    by_id = {r.doc_id: r for r in results} if results is not None else {}
    ts, us, ys = [], [], []
    for doc in docs:
        t, u = _token_scopes(doc, design, by_id.get(doc.doc_id))
        ts.append(t)
        us.append(u)
        ys.append(doc.values)
    t = np.concatenate(ts)
    u = np.concatenate(us)
    y = np.concatenate(ys)
    if design.K and 2 * design.K >= u.min():
        warnings.warn(
            f"2K = {2 * design.K} >= smallest scaling length {u.min():.3g}: "
            "highest harmonic columns alias",
            stacklevel=2,
        )
    cols = [np.ones_like(t), np.clip(t / u, 0.0, 1.0), np.log1p(t)]
    for k in range(1, design.K + 1):
        angle = 2.0 * np.pi * k * t / u
        cols.append(np.sin(angle))
        cols.append(np.cos(angle))
    return np.column_stack(cols), y, design.column_names()


def fit_ols(X: np.ndarray, y: np.ndarray, columns: list[str] | None = None) -> HRFit:
    """Ordinary least squares with classical standard errors.

    Requires more rows than columns and full column rank; rank deficiency
    raises with the names of the dependent columns. p-values are two-sided
    from the t distribution with n - p degrees of freedom. Amplitudes are
    collected from column pairs named sin_k / cos_k.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n, p = X.shape
    if columns is None:
        columns = [f"x{i}" for i in range(p)]
    if len(columns) != p:
        raise ValueError("column names do not match matrix width")
    if n < p + 1:
        raise ValueError(f"need at least {p + 1} observations for {p} columns, got {n}")
    _, R, piv = scipy.linalg.qr(X, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    tol = diag[0] * max(n, p) * np.finfo(float).eps if diag.size else 0.0
    rank = int(np.sum(diag > tol))
    if rank < p:
        dependent = [columns[i] for i in sorted(piv[rank:])]
        raise ValueError(f"design matrix is rank deficient; dependent columns: {dependent}")
    beta, _, _, _ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ beta
    sse = float(resid @ resid)
    dof = n - p
    sigma2 = sse / dof
    cov = sigma2 * np.linalg.inv(X.T @ X)
    stderr = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        tstat = np.where(stderr > 0, beta / stderr, np.inf * np.sign(beta))
    pvalue = 2.0 * scipy.stats.t.sf(np.abs(tstat), dof)
    amplitudes = {}
    for i, name in enumerate(columns):
        if name.startswith("sin_"):
            k = int(name.split("_")[1])
            j = columns.index(f"cos_{k}")
            amplitudes[k] = float(np.hypot(beta[i], beta[j]))
    return HRFit(
        columns=list(columns),
        beta=beta,
        stderr=stderr,
        tstat=tstat,
        pvalue=pvalue,
        amplitudes=amplitudes,
        mse=sse / n,
        n_obs=n,
        dof=dof,
    )


def fit_design(docs, results, design: HRDesign) -> HRFit:
    """Convenience wrapper: build the design matrix and fit it."""
    X, y, columns = build_design_matrix(docs, results, design)
    return fit_ols(X, y, columns)


@dataclass
class MseTable:
    """In-sample MSE per corpus portion and design (None = empty portion)."""

    portions: list[str]
    designs: list[str]
    values: list[list[float | None]]
    baseline_spec: tuple[str, ...] = BASELINE_COLUMNS

    def csv_rows(self) -> list[list]:
        rows = [["portion"] + self.designs]
        for name, row in zip(self.portions, self.values):
            rows.append([name] + list(row))
        return rows


PORTION_ORDER = ("P2", "P1", "Sigma", "Sigma-P1")


def portion_docs(docs, partition) -> dict[str, list]:
    by_id = {d.doc_id: d for d in docs}
    return {
        "P2": [by_id[i] for i in sorted(partition.p2)],
        "P1": [by_id[i] for i in sorted(partition.p1)],
        "Sigma": [by_id[i] for i in sorted(partition.sigma)],
        "Sigma-P1": [by_id[i] for i in sorted(partition.sigma - partition.p1)],
    }


def evaluate_mse_by_partition(docs, partition, designs, results=None) -> MseTable:
    """Fit each design (plus baseline-only) on P2, P1, Sigma, Sigma-P1.

    In-sample MSE throughout; empty portions yield None cells.
    """
    portions = portion_docs(docs, partition)
    all_designs = [("baseline", HRDesign(K=0, scaler="document"))]
    all_designs += [(d.scaler, d) for d in designs]
    values = []
    for name in PORTION_ORDER:
        subset = portions[name]
        row = []
        for _, design in all_designs:
            if not subset:
                row.append(None)
            else:
                row.append(fit_design(subset, results, design).mse)
        values.append(row)
    return MseTable(
        portions=list(PORTION_ORDER),
        designs=[label for label, _ in all_designs],
        values=values,
    )
