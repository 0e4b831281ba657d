"""
Clustering dividers.

Alternatives to the dividing CART: the encoded options and the performance
are standardised together and grouped by a scikit-learn clusterer. The
resulting divisions feed the same local models and router as CART divisions.
"""

import logging
from typing import Literal

import numpy as np
from sklearn.cluster import DBSCAN, AgglomerativeClustering, KMeans
from sklearn.preprocessing import StandardScaler

from ..errors import DataError
from .divisions import Division

logger = logging.getLogger(__name__)

Clusterer = Literal["kmeans", "agglomerative", "dbscan"]
CLUSTERERS: tuple[str, ...] = ("kmeans", "agglomerative", "dbscan")

# clustered divisions have no tree node
NO_NODE = -1


def cluster_labels(
    X: np.ndarray,
    y: np.ndarray,
    method: Clusterer,
    n_clusters: int,
    seed: int,
    eps: float = 0.5,
    min_samples: int = 5,
) -> np.ndarray:
    """
    Cluster rows on standardised options plus performance.

    Args:
        X: (rows, width) encoded features
        y: Performances
        method: kmeans, agglomerative or dbscan
        n_clusters: Cluster count for kmeans and agglomerative, clamped to the row count
        seed: KMeans initialisation seed
        eps: DBSCAN neighbourhood radius
        min_samples: DBSCAN core point size

    Returns:
        Label per row. DBSCAN noise rows are -1.

    Raises:
        DataError: On an unknown method or a cluster count below 1
    """
    if n_clusters < 1:
        raise DataError("INVALID_CLUSTERS", f"Cluster count must be at least 1, got {n_clusters}",
                        {"n_clusters": n_clusters})

    features = StandardScaler().fit_transform(np.column_stack([X, y]))
    k = min(n_clusters, len(y))

    match method:
        case "kmeans":
            return KMeans(n_clusters=k, n_init=10, random_state=seed).fit_predict(features)
        case "agglomerative":
            if k == 1:
                return np.zeros(len(y), dtype=np.int64)
            return AgglomerativeClustering(n_clusters=k).fit_predict(features)
        case "dbscan":
            return DBSCAN(eps=eps, min_samples=min_samples).fit_predict(features)
        case _:
            raise DataError("INVALID_DIVIDER", f"Unknown clusterer '{method}'",
                            {"divider": method, "known": list(CLUSTERERS)})


def divisions_from_labels(labels: np.ndarray, y: np.ndarray) -> list[Division]:
    """
    One division per distinct label.

    Divisions are numbered by their first row, so ids do not depend on the
    clusterer's label values. DBSCAN noise rows form a division of their own.

    Args:
        labels: Cluster label per row
        y: Performances

    Returns:
        Divisions with node_id NO_NODE
    """
    labels = np.asarray(labels)
    y = np.asarray(y, dtype=float)
    _, first = np.unique(labels, return_index=True)

    divisions = []
    for division_id, label in enumerate(labels[np.sort(first)]):
        rows = np.flatnonzero(labels == label)
        values = y[rows]
        mean = float(values.mean())
        divisions.append(
            Division(
                id=division_id,
                node_id=NO_NODE,
                sample_indices=tuple(int(i) for i in rows),
                mean_performance=mean,
                n=int(rows.size),
                h=float(np.sum((values - mean) ** 2)) / rows.size,
                z=-float(rows.size),
            )
        )

    noise = int(np.sum(labels == -1))
    logger.debug(f"{len(divisions)} clustered divisions, sizes {[d.n for d in divisions]}, {noise} noise rows")
    return divisions
