"""Regenerate src/khflow/corpus/fixtures.json from the in-repo oracles."""

import json
from pathlib import Path

from khflow import corpus

out = {name: corpus.build_fixture(corpus.load(name)) for name in corpus.names()}
path = Path(corpus.__file__).with_name(corpus.FIXTURES)
path.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
print(f"wrote {len(out)} fixtures to {path}")
