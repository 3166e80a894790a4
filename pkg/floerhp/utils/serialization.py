import json
from typing import Any


def dump_json(obj: Any) -> str:
    """
    Compact JSON rendering. Key order is the insertion order chosen by the producing `to_dict`, so equal inputs give
    byte-identical output.
    """
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def load_json_file(path) -> Any:
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)
