# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import logging
import threading

from queue import Queue, Empty

import udpcert.config as udpcert_config


class BaseComponent:
    """
    Base class for all components. A component has an id, its own logger and
    access to the main configuration.
    """

    def __init__(self, config, component_id):
        self.base_config = config
        self.component_id = component_id
        self.log = logging.getLogger("%s" % (component_id))


class TrialRunner(BaseComponent):
    """
    Runs independent trials in worker threads. Every trial is identified by its stream id
    and the results are always returned ordered by the stream id, regardless of the order in
    which the workers finish.
    """

    def __init__(self, config, component_id="runner", jobs=1, exit_event=None):
        super().__init__(config, component_id)
        if jobs < 1:
            raise Exception("The number of jobs must be a positive integer.")
        self.jobs = jobs
        self.exit_event = exit_event if exit_event is not None else udpcert_config.exit_event

    def worker(self, fn, tasks, results, errors):
        """
        The main method of a worker thread, it takes trials from the queue until it is empty
        or the exit event is set.
        """
        while not self.exit_event.is_set():
            try:
                stream = tasks.get_nowait()
            except Empty:
                break
            try:
                results[stream] = fn(stream)
                self.log.debug(f"The trial {stream} finished.")
            except Exception as e:
                errors[stream] = e
            finally:
                tasks.task_done()

    def run(self, fn, streams):
        """
        Run `fn(stream)` for all streams and return the list of results ordered by stream.
        The first error (in stream order) is re-raised after all workers end.
        """
        streams = list(streams)
        tasks = Queue()
        for s in streams:
            tasks.put(s)
        results, errors = {}, {}

        if self.jobs == 1:
            self.worker(fn, tasks, results, errors)
        else:
            self.log.info(f"Running {len(streams)} trials using {self.jobs} workers.")
            threads = [
                threading.Thread(target=self.worker, args=(fn, tasks, results, errors), daemon=True)
                for _ in range(min(self.jobs, max(len(streams), 1)))
            ]
            for t in threads:
                t.start()
            for t in threads:
                t.join()

        if errors:
            raise errors[min(errors.keys())]
        if self.exit_event.is_set() and len(results) < len(streams):
            self.log.warning(f"Interrupted, {len(results)} out of {len(streams)} trials finished.")
        return [results[s] for s in streams if s in results]
