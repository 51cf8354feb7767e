# Copyright 2026 The kgforge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Knowledge graph embedding training, evaluation and sharing."""

from __future__ import annotations

import json
import os
from typing import Iterable, Sequence

from . import _kgforge
from ._kgforge import BundleError, ConfigError, DivergenceError, Error, ParseError

__all__ = [
    "BundleError",
    "ConfigError",
    "DivergenceError",
    "Error",
    "Experiment",
    "ParseError",
    "default_config",
    "load_experiment",
    "models",
    "parse_cx",
    "parse_ntriples",
    "parse_tsv",
    "random_search",
    "read_triples",
    "run_experiment",
    "synthetic_kg",
    "validate_zoo_entry",
    "write_triples",
]

__version__ = "0.1.0"

Triple = tuple[str, str, str]

models = _kgforge.models
parse_tsv = _kgforge.parse_tsv
parse_ntriples = _kgforge.parse_ntriples
parse_cx = _kgforge.parse_cx
synthetic_kg = _kgforge.synthetic_kg


def read_triples(path: str | os.PathLike, format: str = "tsv") -> list[Triple]:
    return _kgforge.read_triples(path, format)


def write_triples(path: str | os.PathLike, triples: Iterable[Triple]) -> None:
    _kgforge.write_triples(path, list(triples))


def default_config(model: str = "TransE", **overrides) -> dict:
    """Default configuration for `model`, with top-level keys overridden."""
    config = json.loads(_kgforge.default_config(model))
    config.update(overrides)
    return json.loads(_kgforge.normalize_config(json.dumps(config)))


class Experiment:
    """A trained model together with its split, metrics and loss history."""

    def __init__(self, native: _kgforge.Experiment):
        self._native = native

    @property
    def config(self) -> dict:
        return json.loads(self._native.config_json())

    @property
    def metrics(self) -> dict:
        return json.loads(self._native.metrics_json())

    @property
    def losses(self) -> list[float]:
        return self._native.losses()

    @property
    def entities(self) -> list[str]:
        return self._native.entities()

    @property
    def relations(self) -> list[str]:
        return self._native.relations()

    def train_triples(self) -> list[Triple]:
        return self._native.train_triples()

    def test_triples(self) -> list[Triple]:
        return self._native.test_triples()

    def score(self, triples: Sequence[Triple]) -> list[float]:
        return self._native.score(list(triples))

    def evaluate(self, triples: Sequence[Triple]) -> dict:
        return json.loads(self._native.evaluate_json(list(triples)))

    def save(self, path: str | os.PathLike, overwrite: bool = False) -> None:
        self._native.save(path, overwrite)


def run_experiment(triples: Iterable[Triple], config: dict) -> Experiment:
    """Split, train and evaluate according to `config`."""
    return Experiment(_kgforge.run_experiment(list(triples), json.dumps(config)))


def load_experiment(path: str | os.PathLike) -> Experiment:
    return Experiment(_kgforge.load_experiment(path))


def random_search(triples: Iterable[Triple], space: dict, seed: int = 0) -> dict:
    return json.loads(_kgforge.random_search(list(triples), json.dumps(space), seed))


def validate_zoo_entry(path: str | os.PathLike, root: str | os.PathLike = "") -> list[dict]:
    return json.loads(_kgforge.validate_zoo_entry(path, root))
