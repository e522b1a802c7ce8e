from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, Iterable, List, TypeVar

from dualroots.dualroots_lab.config import DualRootsConfig, get_config
from dualroots.dualroots_lab.log import log

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    func: Callable[[T], R],
    items: Iterable[T],
    workers: int = None,
    config: DualRootsConfig = None,
) -> List[R]:
    """Maps func over items, results in input order whatever the worker count.

    Args:
        func (Callable): A picklable (module level) callable.
        items (Iterable): The work items.
        workers (int, optional): Number of worker processes. Defaults to
            the configured worker count; 1 runs in process.
    """
    items = list(items)
    workers = max(1, int(workers or get_config(config).workers))
    if workers == 1 or len(items) <= 1:
        return [func(item) for item in items]

    log.debug(f"Running {len(items)} tasks on {workers} workers")
    results: List[R] = [None] * len(items)
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futs = {ex.submit(func, item): idx for idx, item in enumerate(items)}
        for fut in as_completed(futs):
            results[futs[fut]] = fut.result()
    return results
