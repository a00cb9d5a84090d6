import itertools
import logging
import queue
import threading
import uuid
from functools import wraps

from biharmonica.exceptions import BiharmonicaError
from biharmonica.settings import settings

logger = logging.getLogger(__name__)


class Task:
    def __init__(self):
        self.uid = uuid.uuid4().hex
        self.result = None
        self.error = None
        self._done = threading.Event()

    def __str__(self):
        return self.uid

    @property
    def completed(self):
        return self._done.is_set() and self.error is None

    def finish(self, result=None, error=None):
        self.result = result
        self.error = error
        self._done.set()

    def wait(self, timeout=None):
        return self._done.wait(timeout=timeout)


def background_task(method):
    @wraps(method)
    def wrapper(self, *args, **kwargs):
        try:
            task = kwargs.pop('task', Task())
            priority = kwargs.pop('priority', 0)
            self.task_queue.put_nowait((priority, next(self._order), method, task, (self, task) + args, kwargs))
        except queue.Full:
            return None
        else:
            return task
    return wrapper


class EvaluationServer:
    """Worker threads evaluating grid points.

    With fewer than two workers every call runs inline, in order. Results
    are always returned in submission order, so reports do not depend on
    the worker count.
    """

    def __init__(self):
        self.task_queue = queue.PriorityQueue()
        self._order = itertools.count()

        self._stop_lock = threading.RLock()
        self._worker_stop = threading.Event()
        self._worker_threads = []

    @property
    def running(self):
        return bool(self._worker_threads)

    def start(self, workers=None):
        # In case the setting value changes.
        if workers is None:
            workers = int(settings.WORKERS)
        with self._stop_lock:
            if self._worker_threads or workers < 2:
                return
            self._worker_stop.clear()
            for i in range(workers):
                thread = threading.Thread(target=self.worker_run, name='biharmonica-worker-{}'.format(i), daemon=True)
                thread.start()
                self._worker_threads.append(thread)
            logger.debug('Started %d evaluation workers', workers)

    def stop_all(self):
        with self._stop_lock:
            self._worker_stop.set()
            threads, self._worker_threads = self._worker_threads, []
        for thread in threads:
            thread.join()

    def worker_run(self):
        timeout = 0
        while not self._worker_stop.wait(timeout=timeout):
            try:
                _, _, method, task, args, kwargs = self.task_queue.get_nowait()
            except queue.Empty:
                timeout = 0.05
            else:
                timeout = 0
                try:
                    task.finish(result=method(*args, **kwargs))
                except KeyboardInterrupt:
                    task.finish(error=KeyboardInterrupt())
                    break
                except BiharmonicaError as e:
                    logger.debug('Evaluation task %s failed: %s', task, e)
                    task.finish(error=e)
                except Exception as e:  # catch all
                    logger.exception('Evaluation task %s crashed', task)
                    task.finish(error=e)
                self.task_queue.task_done()

    @background_task
    def evaluate(self, task, fn, *args):
        return fn(*args)

    def map(self, fn, items):
        items = list(items)
        if not self.running:
            return [fn(item) for item in items]

        tasks = [self.evaluate(fn, item) for item in items]
        results = []
        for task in tasks:
            task.wait()
            if task.error is not None:
                raise task.error
            results.append(task.result)
        return results


server = EvaluationServer()
