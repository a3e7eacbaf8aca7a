import functools
import logging
import os
from math import gcd

import psutil
import dask.bag as db


class DomainError(ValueError):
    """A mathematical precondition does not hold"""


class UsageError(DomainError):
    """Malformed textual input: hole specs, windows, config files"""


class ResourceError(DomainError):
    """Input is past a size guard"""


class UndefinedItineraryError(DomainError):
    """The baker's map has no well defined image at this point"""


class NoWitnessError(DomainError):
    """No interior witness exists for this hole"""


def guard(value, limit, name):
    """
    Raises ResourceError if `value > limit`
    """

    if value > limit:
        raise ResourceError(f"{name}={value} is larger than the guard {limit}")


def lcm(*values):
    """
    Returns least common multiple of positive integers `values`
    """

    result = 1
    for v in values:
        result = result * v // gcd(result, v)
    return result


def physical_cores():
    """
    Returns number of cores available to this process
    Checks the LSF allocation first, then counts physical cores
    """

    if "LSB_DJOB_NUMPROC" in os.environ:
        return int(os.environ["LSB_DJOB_NUMPROC"])
    ncores = psutil.cpu_count(logical=False)
    return ncores if ncores else 1


def default_jobs():
    """
    Returns the job count from TRAPSEEKER_JOBS, 1 when unset
    """

    return int(os.environ.get("TRAPSEEKER_JOBS", 1))


def scheduler_kwargs_for(jobs):
    """
    Returns dask compute kwargs for `jobs` workers
    `jobs == 0` uses every physical core
    """

    if jobs is None:
        jobs = default_jobs()
    if jobs < 0:
        raise UsageError(f"jobs must be nonnegative, got {jobs}")
    if jobs == 0:
        jobs = physical_cores()
    if jobs == 1:
        return {'scheduler': 'sync'}
    return {'scheduler': 'processes', 'num_workers': jobs}


def check_scheduler(func):
    @functools.wraps(func)
    def create_or_pass_scheduler(*args, **kwargs):
        if 'scheduler_kwargs' in kwargs and kwargs['scheduler_kwargs'] is not None:
            kwargs.pop('jobs', None)
            return func(*args, **kwargs)
        kwargs.pop('scheduler_kwargs', None)
        jobs = kwargs.pop('jobs', None)
        scheduler_kwargs = scheduler_kwargs_for(jobs)
        return func(*args, **kwargs, scheduler_kwargs=scheduler_kwargs)
    return create_or_pass_scheduler


def bag_map(func, items, scheduler_kwargs, npartitions=None):
    """
    Maps `func` over `items` with a dask.bag and returns the results in order
    Specify bag partitions with `npartitions`; default one per worker
    """

    items = list(items)
    if not items:
        return []
    if npartitions is None:
        npartitions = 4 * scheduler_kwargs.get('num_workers', 1)
    npartitions = max(1, min(npartitions, len(items)))
    logging.debug("bag_map: %d items in %d partitions", len(items), npartitions)
    bag = db.from_sequence(items, npartitions=npartitions)
    return list(bag.map(func).compute(**scheduler_kwargs))
