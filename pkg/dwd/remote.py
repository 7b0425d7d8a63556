"""
Coordinator side of distributed runs.

Work is split into one contiguous batch per configured neighbor and sent over gRPC;
any batch whose worker fails is redone locally, so results never depend on which
workers answered.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

import grpc

from . import errors
from .config import Config, Neighbor
from .errors import DwdError
from .phi_graph import Neighbors, expand_batch
from .positivity import PairResult, Task, verify_base
from .wire import dwd_pb2, dwd_pb2_grpc, key_to_msg, msg_to_key
from .worker import CHANNEL_OPTIONS

T = TypeVar("T")
R = TypeVar("R")

_request_ids = itertools.count(1)


def _split(items: Sequence[T], parts: int) -> List[Sequence[T]]:
    size = -(-len(items) // parts) if items else 0
    return [items[i * size:(i + 1) * size] for i in range(parts)]


class RemotePool:
    """Fans batches out to the config's neighbors."""

    def __init__(self, config: Config, timeout: float = 600.0):
        self.config = config
        self.process_id = config.identity
        self.neighbors: List[Neighbor] = list(config.neighbors)
        self.timeout = timeout
        self.logger = logging.getLogger(self.process_id)

    def _stub(self, neighbor: Neighbor):
        channel = grpc.insecure_channel(neighbor.address, options=CHANNEL_OPTIONS)
        return channel, dwd_pb2_grpc.PhiExpansionServiceStub(channel)

    def _fan_out(self, items: Sequence[T], remote: Callable[[object, str, Sequence[T]], List[R]],
                 local: Callable[[Sequence[T]], List[R]]) -> List[R]:
        if not self.neighbors or not items:
            return local(items)
        batches = _split(items, len(self.neighbors))

        def run(neighbor: Neighbor, batch: Sequence[T]) -> List[R]:
            if not batch:
                return []
            request_id = f"{self.process_id}-{next(_request_ids)}"
            self.logger.debug(f"Forwarding {len(batch)} items to {neighbor.process_id} at {neighbor.address}")
            channel, stub = self._stub(neighbor)
            try:
                return remote(stub, request_id, batch)
            except grpc.RpcError as e:
                self.logger.warning(f"Error contacting {neighbor.process_id}: {e.code()}: {e.details()}; "
                                    f"computing {len(batch)} items locally")
                return local(batch)
            finally:
                channel.close()

        with ThreadPoolExecutor(max_workers=len(self.neighbors)) as pool:
            parts = list(pool.map(run, self.neighbors, batches))
        return [result for part in parts for result in part]

    def expand(self, n: int) -> Callable[[Sequence[tuple]], List[Neighbors]]:
        """An expander for enumerate_phi."""
        def remote(stub, request_id, batch):
            request = dwd_pb2.ExpandRequest(request_id=request_id, n=n, classes=[key_to_msg(k) for k in batch],
                                            requesting_process=self.process_id)
            response = stub.Expand(request, timeout=self.timeout)
            if len(response.expansions) != len(batch):
                raise DwdError(f"{response.responding_process} answered {len(response.expansions)} of {len(batch)}")
            out = []
            for key, expansion in zip(batch, response.expansions):
                if msg_to_key(expansion.source) != key:
                    raise DwdError(f"{response.responding_process} answered out of order")
                out.append(tuple(msg_to_key(msg) for msg in expansion.neighbors))
            return out

        return lambda frontier: self._fan_out(list(frontier), remote, expand_batch)

    def verify(self, n: int) -> Callable[[Sequence[Task]], List[List[PairResult]]]:
        """A task runner for verify_conjecture."""
        def local(tasks):
            return [verify_base(base, codes) for base, codes in tasks]

        def remote(stub, request_id, tasks):
            request = dwd_pb2.VerifyRequest(
                request_id=request_id, n=n, requesting_process=self.process_id,
                tasks=[dwd_pb2.VerifyTask(base=key_to_msg(base), target_code=code)
                       for base, codes in tasks for code in codes])
            response = stub.VerifyPairs(request, timeout=self.timeout)
            results = iter(response.results)
            out = []
            for base, codes in tasks:
                group = []
                for code in codes:
                    msg = next(results)
                    if msg.error:
                        name, _, detail = msg.error.partition(": ")
                        error = getattr(errors, name, DwdError)
                        raise error(f"{response.responding_process}: {detail}")
                    group.append(PairResult(base, msg.target_code, msg.positive, msg.term_count, msg.path_length))
                out.append(group)
            return out

        return lambda tasks: self._fan_out(list(tasks), remote, local)

    def status(self) -> List[dict]:
        out = []
        for neighbor in self.neighbors:
            channel, stub = self._stub(neighbor)
            try:
                response = stub.GetStatus(dwd_pb2.StatusRequest(requesting_process=self.process_id), timeout=5)
                out.append({"process_id": response.process_id, "role": response.role,
                            "active_requests": response.active_requests,
                            "classes_expanded": response.classes_expanded,
                            "pairs_verified": response.pairs_verified})
            except grpc.RpcError as e:
                out.append({"process_id": neighbor.process_id, "error": f"{e.code()}: {e.details()}"})
            finally:
                channel.close()
        return out
