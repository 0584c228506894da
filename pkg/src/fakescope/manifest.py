"""Reproducibility manifests written next to every report.

A manifest records the command, its full parameter set, the master seed,
digests of every input and output file, and the tool version. Re-running
the recorded command with the same seed must reproduce artifacts with
identical digests; the manifest's own timestamp is the only field that may
differ between reruns.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

TOOL_VERSION = "0.1.0"

MANIFEST_NAME = "manifest.json"


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: Optional[int]
    inputs: dict[str, str] = field(default_factory=dict)
    artifacts: dict[str, str] = field(default_factory=dict)
    tool_version: str = TOOL_VERSION
    created_at: str = ""

    def add_input(self, path) -> None:
        path = Path(path)
        if path.is_dir():
            for child in sorted(path.rglob("*")):
                if child.is_file():
                    self.inputs[str(child)] = sha256_file(child)
        elif path.is_file():
            self.inputs[str(path)] = sha256_file(path)

    def add_artifact(self, path) -> None:
        self.artifacts[Path(path).name] = sha256_file(path)

    def write(self, out_dir) -> Path:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        self.created_at = datetime.now(timezone.utc).isoformat()
        target = out / MANIFEST_NAME
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "inputs": self.inputs,
            "artifacts": self.artifacts,
            "tool_version": self.tool_version,
            "created_at": self.created_at,
        }
        with open(target, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return target


def load_manifest(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def verify_artifacts(manifest: dict, directory) -> dict[str, bool]:
    """Digest check: does each recorded artifact still match its bytes?"""
    directory = Path(directory)
    return {
        name: (directory / name).exists() and sha256_file(directory / name) == digest
        for name, digest in manifest.get("artifacts", {}).items()
    }
