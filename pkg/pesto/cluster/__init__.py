from pesto.cluster.kmeans import KMeansResult, kmeans, pairwise_distances
from pesto.cluster.pseudo import (
    PseudoLabelSet, confidence_scores, generate_pseudo_labels,
    align_clusters)


__all__ = [
    KMeansResult, kmeans, pairwise_distances,
    PseudoLabelSet, confidence_scores, generate_pseudo_labels,
    align_clusters,
]
