"""
Ordered parallel map.

Work items are dispatched through joblib and results come back in input order. Callers
reduce the returned list sequentially, so sums are bit-identical for every worker count.
"""

import logging

import django
from django.apps import apps
from django.conf import settings

from joblib import Parallel, delayed

logger = logging.getLogger(__name__)


def resolve_threads(threads=None):
    """Worker count from the argument, else from settings."""
    if threads is None:
        threads = settings.HECKE_LAB["THREADS"]
    return max(1, int(threads))


def _run_item(func, item):
    # Process-based workers inherit DJANGO_SETTINGS_MODULE but not the app registry.
    if not apps.ready:
        django.setup()
    return func(item)


def ordered_map(func, items, threads=None, backend=None):
    """
    Apply func to each item, preserving order.

    Args:
        func: Picklable callable of one argument
        items: Iterable of work items
        threads: Worker count (defaults to HECKE_LAB["THREADS"])
        backend: joblib backend (defaults to HECKE_LAB["PARALLEL_BACKEND"])

    Returns:
        List of results in the order of items
    """
    items = list(items)
    n_jobs = resolve_threads(threads)
    if n_jobs == 1 or len(items) <= 1:
        return [func(item) for item in items]
    backend = backend or settings.HECKE_LAB["PARALLEL_BACKEND"]
    logger.debug("Dispatching %d items to %d %s workers", len(items), n_jobs, backend)
    return Parallel(n_jobs=n_jobs, backend=backend)(
        delayed(_run_item)(func, item) for item in items
    )
