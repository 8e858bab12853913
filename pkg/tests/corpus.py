"""Seeded instance corpora shared by the test modules."""

from functools import lru_cache

from bimatroids.catalog import bimatroids as catalog_bimatroids
from bimatroids.generate import (random_matrix_bimatroid, random_realizable_morphism,
                                 random_relation_bimatroid, trial_rng)

SEED = 20240601


@lru_cache(maxsize=None)
def matrix_corpus(count: int = 200, max_side: int = 5):
    return [random_matrix_bimatroid(trial_rng("matrix", SEED, t), max_side, max_side)
            for t in range(count)]


@lru_cache(maxsize=None)
def relation_corpus(count: int = 50, max_side: int = 4):
    return [random_relation_bimatroid(trial_rng("relation", SEED, t), max_side, max_side)
            for t in range(count)]


@lru_cache(maxsize=None)
def morphism_corpus(count: int = 100):
    return [random_realizable_morphism(trial_rng("morphism", SEED, t)) for t in range(count)]


def bimatroid_corpus(matrices: int = 200, relations: int = 50):
    """All bimatroids of the cryptomorphism suite as ``(name, bimatroid)``."""
    out = [(f"matrix{t}", B) for t, (_, B) in enumerate(matrix_corpus(matrices))]
    out += list(catalog_bimatroids().items())
    out += [(f"relation{t}", B) for t, (_, B) in enumerate(relation_corpus(relations))]
    return out
