"""Append-only JSON-lines result cache for per-(t, p) Frobenius data.

Rows are keyed by (family hash, parameter residue tuple, prime).  Replays
are deduplicated on load (last row wins, though rows are immutable in
practice); malformed lines are skipped and counted, never fatal, so a
truncated write from an interrupted run cannot poison a resume.
"""

from __future__ import annotations

import json
import os


class ResultCache:
    def __init__(self, path):
        self.path = path
        self.entries = {}
        self.malformed = 0
        self._load()

    def _load(self):
        if not self.path or not os.path.exists(self.path):
            return
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    row = json.loads(line)
                    key = (row["family"], tuple(row["t"]), int(row["p"]))
                    self.entries[key] = row["data"]
                except (ValueError, KeyError, TypeError):
                    self.malformed += 1

    def get(self, family_id, t, p):
        return self.entries.get((family_id, tuple(t), p))

    def put(self, family_id, t, p, data):
        key = (family_id, tuple(t), p)
        if key in self.entries:
            return
        self.entries[key] = data
        if self.path:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(
                    json.dumps(
                        {"family": family_id, "t": list(t), "p": p, "data": data},
                        sort_keys=True,
                    )
                    + "\n"
                )

    def __len__(self):
        return len(self.entries)
