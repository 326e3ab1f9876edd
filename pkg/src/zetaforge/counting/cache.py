"""On-disk count cache.

One file per (variety content hash, kind, base), holding lines
``n<TAB>value<TAB>meta`` with decimal integers.  Only the owning process
writes; each store rewrites the file atomically.
"""
from __future__ import annotations

import os
import tempfile
import threading
from pathlib import Path


class CountCache:
    def __init__(self, root):
        self.root = Path(root)
        self._lock = threading.Lock()

    def path(self, vhash: str, kind: str, base: str) -> Path:
        return self.root / f"{vhash}.{kind}.{base}.tsv"

    def load(self, vhash: str, kind: str, base: str) -> dict[int, tuple[int, str]]:
        path = self.path(vhash, kind, base)
        out: dict[int, tuple[int, str]] = {}
        if not path.exists():
            return out
        for line in path.read_text(encoding="ascii").splitlines():
            if not line.strip():
                continue
            n, value, meta = line.split("\t")
            out[int(n)] = (int(value), meta)
        return out

    def store(self, vhash: str, kind: str, base: str, records: dict[int, tuple[int, str]]) -> None:
        if not records:
            return
        with self._lock:
            self.root.mkdir(parents=True, exist_ok=True)
            merged = self.load(vhash, kind, base)
            for n, rec in records.items():
                old = merged.get(n)
                if old is not None and old[0] != rec[0]:
                    raise RuntimeError(
                        f"cache conflict for {kind} n={n}: stored {old[0]}, computed {rec[0]}")
                merged[n] = rec
            body = "".join(f"{n}\t{v}\t{m}\n" for n, (v, m) in sorted(merged.items()))
            path = self.path(vhash, kind, base)
            fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-")
            with os.fdopen(fd, "w", encoding="ascii") as fh:
                fh.write(body)
            os.replace(tmp, path)
