"""
Protobuf messages and gRPC stubs for the worker service.

The .proto file in dwd/proto is the source of truth; message classes and the
service stub/servicer are produced from it at import time.
"""

import os
import sys
from typing import Iterable

import grpc

from .labels import ClassKey

PROTO_DIR = os.path.join(os.path.dirname(__file__), "proto")

# protos_and_services looks the .proto file up on sys.path
if PROTO_DIR not in sys.path:
    sys.path.insert(0, PROTO_DIR)

dwd_pb2, dwd_pb2_grpc = grpc.protos_and_services("dwd_service.proto")


def key_to_msg(key: ClassKey):
    return dwd_pb2.ClassKey(codes=key)


def msg_to_key(msg) -> ClassKey:
    return tuple(msg.codes)


def keys_to_msgs(keys: Iterable[ClassKey]):
    return [key_to_msg(key) for key in keys]
