"""scikit-learn style wrappers: graphs are the samples.

Both estimators are stateless; ``fit`` only validates its input.

>>> from reebpair.fixtures import example_graph
>>> diagrams = PersistencePairing(algorithm="multipass").fit_transform([example_graph()])
>>> len(diagrams[0].extended)
3
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from .conditioning import condition
from .graph import validate_conditioned
from .multipass import pair_multipass
from .oracle import oracle_diagram
from .singlepass import pair_singlepass
from .validation import check_connected, check_graphs, check_option

__all__ = ["PersistencePairing", "ReebConditioner"]

ALGORITHMS = ("multipass", "singlepass", "oracle")
SWEEPS = ("auto", "asc", "desc")


class ReebConditioner(TransformerMixin, BaseEstimator):
    """Bring each graph into canonical form.

    After ``transform``, ``reports_`` holds one conditioning report per graph.
    """

    def fit(self, X, y=None):
        self.n_graphs_fit_ = len(check_graphs(X))
        return self

    def transform(self, X):
        out, reports = [], []
        for graph in check_graphs(X):
            conditioned, report = condition(graph)
            out.append(conditioned)
            reports.append(report)
        self.reports_ = reports
        return out


class PersistencePairing(TransformerMixin, BaseEstimator):
    """Map each graph to its persistence diagram.

    Parameters
    ----------
    algorithm : {"singlepass", "multipass", "oracle"}
    sweep : {"auto", "asc", "desc"}
        Sweep direction for the single-pass engine.
    virtual_edges : bool
        Single-pass only; turning this off gives wrong answers on some graphs.
    condition : bool
        Condition graphs that are not already in canonical form.
    """

    def __init__(self, algorithm="singlepass", sweep="auto", virtual_edges=True, condition=True):
        self.algorithm = algorithm
        self.sweep = sweep
        self.virtual_edges = virtual_edges
        self.condition = condition

    def _check_params(self):
        check_option("algorithm", self.algorithm, ALGORITHMS)
        check_option("sweep", self.sweep, SWEEPS)

    def fit(self, X, y=None):
        self._check_params()
        self.n_graphs_fit_ = len(check_graphs(X))
        return self

    def _pair(self, graph):
        if self.condition and validate_conditioned(graph):
            graph = condition(graph)[0]
        check_connected(graph)
        if self.algorithm == "multipass":
            return pair_multipass(graph)
        if self.algorithm == "oracle":
            return oracle_diagram(graph)
        return pair_singlepass(graph, self.sweep, virtual_edges=self.virtual_edges)

    def transform(self, X):
        self._check_params()
        return [self._pair(g) for g in check_graphs(X)]
