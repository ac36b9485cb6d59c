import numpy as np

from polyrips import geometry


def polygon_distance_matrix(n, points):
    """Pairwise Euclidean distances between arc coordinates on the n-gon."""
    emb = np.array([geometry.embed(n, t) for t in points])
    diff = emb[:, None, :] - emb[None, :, :]
    return np.sqrt((diff**2).sum(-1))
