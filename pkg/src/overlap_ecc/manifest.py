"""Run manifests: a small receipt emitted next to every CLI report.

The manifest records what was run (command and raw arguments), with which
library version and seed, and a sha256 of each output produced.  Two runs
with identical manifests modulo checksums must produce identical outputs,
so the checksum doubles as a determinism probe in CI.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

MANIFEST_SCHEMA = "overlap-ecc/manifest/1"


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    command: str
    arguments: tuple
    version: str
    outputs: dict = field(default_factory=dict)  # target name -> sha256
    seed: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "schema": MANIFEST_SCHEMA,
            "command": self.command,
            "arguments": list(self.arguments),
            "seed": self.seed,
            "version": self.version,
            "outputs": dict(sorted(self.outputs.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def manifest_path(out_path: str) -> str:
    """Sibling path for a report written to out_path."""
    return out_path + ".manifest.json"
