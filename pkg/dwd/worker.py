"""
Worker process: serves frontier expansion and pair verification over gRPC.
"""

import logging
import threading
import time
from concurrent import futures
from typing import Optional

import grpc

from .config import Config
from .errors import DwdError
from .labels import key_n
from .phi_graph import expand_class
from .positivity import verify_base
from .wire import dwd_pb2, dwd_pb2_grpc, key_to_msg, keys_to_msgs, msg_to_key

MAX_MESSAGE_BYTES = 100 * 1024 * 1024
CHANNEL_OPTIONS = [
    ("grpc.max_receive_message_length", MAX_MESSAGE_BYTES),
    ("grpc.max_send_message_length", MAX_MESSAGE_BYTES),
]


class PhiExpansionServiceImpl(dwd_pb2_grpc.PhiExpansionServiceServicer):
    """PhiExpansionService for one worker process."""

    def __init__(self, config: Config):
        self.config = config
        self.process_id = config.identity
        self.logger = logging.getLogger(self.process_id)

        # request_id -> {kind, start_time, size}
        self.active_requests = {}
        self.request_lock = threading.Lock()
        self.classes_expanded = 0
        self.pairs_verified = 0

        self.logger.info(f"Initialized as {config.role}")

    def _begin(self, request_id: str, kind: str, size: int) -> None:
        with self.request_lock:
            self.active_requests[request_id] = {"kind": kind, "start_time": time.time(), "size": size}

    def _end(self, request_id: str) -> float:
        with self.request_lock:
            info = self.active_requests.pop(request_id, None)
        return time.time() - info["start_time"] if info else 0.0

    def Expand(self, request, context):
        classes = [msg_to_key(msg) for msg in request.classes]
        self.logger.info(f"Expand request_id={request.request_id} from {request.requesting_process}: "
                         f"{len(classes)} classes")
        for key in classes:
            if key_n(key) != request.n:
                context.abort(grpc.StatusCode.INVALID_ARGUMENT, f"class of size {len(key)} is not in Φ_{request.n}")
        self._begin(request.request_id, "expand", len(classes))
        try:
            expansions = []
            for key in classes:
                neighbors = expand_class(key)
                expansions.append(dwd_pb2.Expansion(source=key_to_msg(key), degree=len(neighbors),
                                                    neighbors=keys_to_msgs(neighbors)))
        except DwdError as e:
            self._end(request.request_id)
            context.abort(grpc.StatusCode.INTERNAL, f"{type(e).__name__}: {e}")
        with self.request_lock:
            self.classes_expanded += len(classes)
        elapsed = self._end(request.request_id)
        self.logger.info(f"Expand request_id={request.request_id} done in {elapsed:.2f}s")
        return dwd_pb2.ExpandResponse(request_id=request.request_id, expansions=expansions,
                                      responding_process=self.process_id)

    def VerifyPairs(self, request, context):
        self.logger.info(f"VerifyPairs request_id={request.request_id} from {request.requesting_process}: "
                         f"{len(request.tasks)} pairs")
        self._begin(request.request_id, "verify", len(request.tasks))
        grouped = {}
        for task in request.tasks:
            grouped.setdefault(msg_to_key(task.base), []).append(task.target_code)
        results = []
        for base, codes in grouped.items():
            try:
                for result in verify_base(base, codes):
                    results.append(dwd_pb2.VerifyResult(
                        base=key_to_msg(base), target_code=result.target_code, positive=result.positive,
                        term_count=result.term_count, path_length=result.path_length))
            except DwdError as e:
                # reported per base; the coordinator decides whether it is fatal
                for code in codes:
                    results.append(dwd_pb2.VerifyResult(base=key_to_msg(base), target_code=code,
                                                        error=f"{type(e).__name__}: {e}"))
        with self.request_lock:
            self.pairs_verified += len(request.tasks)
        elapsed = self._end(request.request_id)
        self.logger.info(f"VerifyPairs request_id={request.request_id} done in {elapsed:.2f}s")
        return dwd_pb2.VerifyResponse(request_id=request.request_id, results=results,
                                      responding_process=self.process_id)

    def GetStatus(self, request, context):
        with self.request_lock:
            return dwd_pb2.StatusResponse(
                process_id=self.process_id, role=self.config.role,
                active_requests=len(self.active_requests),
                classes_expanded=self.classes_expanded, pairs_verified=self.pairs_verified)


def create_server(config: Config, max_workers: int = 10):
    """Build and start a server; returns (server, bound port)."""
    server = grpc.server(futures.ThreadPoolExecutor(max_workers=max_workers), options=CHANNEL_OPTIONS)
    dwd_pb2_grpc.add_PhiExpansionServiceServicer_to_server(PhiExpansionServiceImpl(config), server)
    port = server.add_insecure_port(f"{config.hostname}:{config.port}")
    server.start()
    return server, port


def serve(config: Config, ready: Optional[threading.Event] = None) -> None:
    """Start the gRPC server and block until interrupted."""
    logger = logging.getLogger(config.identity)
    server, port = create_server(config)
    logger.info(f"Server started on {config.hostname}:{port}")
    logger.info("Press Ctrl+C to stop")
    if ready is not None:
        ready.set()
    try:
        server.wait_for_termination()
    except KeyboardInterrupt:
        logger.info("Shutting down...")
        server.stop(0)
