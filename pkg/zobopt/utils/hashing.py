# -*- coding: utf-8 -*-
from __future__ import annotations

import hashlib
import json
from typing import Any


def _hash_bytes(b: bytes) -> str:
    h = hashlib.sha256()
    h.update(b)
    return h.hexdigest()


def fingerprint(payload: Any) -> str:
    """
    Hash estável de uma estrutura JSON-serializável (chaves ordenadas).
    Usado como `config_fingerprint` dos traços.
    """
    raw = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return _hash_bytes(raw.encode("utf-8"))[:16]
