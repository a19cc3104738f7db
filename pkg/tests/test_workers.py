import threading
import time

from workers import RoundRobinWorkerPool, ChunkedWorkerPool


def test_round_robin_keeps_input_order():
    def slow_square(x):
        time.sleep(0.001 * (10 - x))
        return x * x

    results = RoundRobinWorkerPool(list(range(10)), slow_square, num_workers=3).run()
    assert results == [x * x for x in range(10)]


def test_round_robin_single_worker_runs_inline():
    seen = []
    RoundRobinWorkerPool([1, 2], lambda x: seen.append(threading.current_thread().name), num_workers=1).run()
    assert seen == [threading.main_thread().name] * 2


def test_chunked_pool_contiguous_chunks():
    results = ChunkedWorkerPool(list(range(7)), lambda chunk, offset: [c + offset for c in chunk],
                                func_args=(100,), num_workers=3).run()
    assert results == [[100, 101, 102], [103, 104], [105, 106]]


def test_chunked_pool_more_workers_than_items():
    results = ChunkedWorkerPool([1], lambda chunk: len(chunk), num_workers=3).run()
    assert results == [1, 0, 0]
