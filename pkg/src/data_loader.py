import json
import logging
from pathlib import Path

import yaml

from src.config import FORMAT_VERSION
from src.covering import BranchPoint, Handle, HurwitzSystem
from src.exceptions import CoverGenusError, SchemaError
from src.permutations import Permutation

logger = logging.getLogger(__name__)

# --- COVERING SCHEMA ---


def _perm_to_json(perm):
    return perm.to_cycles()


def _perm_from_json(cycles, degree, where):
    if not isinstance(cycles, list) or not all(isinstance(c, list) for c in cycles):
        raise SchemaError(f"{where}: expected a list of cycles, got {cycles!r}.")
    for cycle in cycles:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in cycle):
            raise SchemaError(f"{where}: cycle entries must be integers, got {cycle!r}.")
    return Permutation.from_cycles(cycles, degree)


def to_dict(H):
    """
    Serializable form of a Hurwitz system. Permutations are written as 1-based
    cycle lists without fixed points; an identity permutation is [].
    """
    return {
        'format_version': FORMAT_VERSION,
        'degree': H.degree,
        'base_genus': H.base_genus,
        'branch_points': [{'label': bp.label, 'perm': _perm_to_json(bp.perm)} for bp in H.branch_points],
        'handles': [{'a': _perm_to_json(h.a), 'b': _perm_to_json(h.b)} for h in H.handles],
    }


def from_dict(data):
    """
    Parses a covering document. Validation of the relation and transitivity
    is left to covering.validate.

    Raises:
        SchemaError: missing keys, wrong types or an unsupported format version.
    """
    if not isinstance(data, dict):
        raise SchemaError(f"Expected a JSON object, got {type(data).__name__}.")
    version = data.get('format_version', FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise SchemaError(f"Unsupported format_version {version}; this build reads {FORMAT_VERSION}.")
    try:
        degree = data['degree']
        branch_points = data.get('branch_points', [])
        handles = data.get('handles', [])
        base_genus = data.get('base_genus', len(handles))
    except KeyError as e:
        raise SchemaError(f"Missing required key {e}.") from e
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise SchemaError(f"'degree' must be a positive integer, got {degree!r}.")

    try:
        parsed_branch = tuple(
            BranchPoint(str(bp['label']), _perm_from_json(bp['perm'], degree, f"branch point {bp.get('label')!r}"))
            for bp in branch_points
        )
        parsed_handles = tuple(
            Handle(_perm_from_json(h['a'], degree, f"handle {i} a"), _perm_from_json(h['b'], degree, f"handle {i} b"))
            for i, h in enumerate(handles, start=1)
        )
    except (KeyError, TypeError) as e:
        raise SchemaError(f"Malformed branch point or handle entry: {e}.") from e
    try:
        return HurwitzSystem(degree, base_genus, parsed_branch, parsed_handles)
    except CoverGenusError:
        raise
    except ValueError as e:
        raise SchemaError(str(e)) from e


def dumps(data):
    """Byte-stable JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def write_text(text, path):
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    logger.info("Wrote %s", path)


def write_json(data, path):
    write_text(dumps(data), path)


def save_system(H, path):
    write_json(to_dict(H), path)


def load_system(path):
    """
    Reads a covering document from disk.

    Raises:
        SchemaError: the file is not valid JSON or does not follow the schema.
    """
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: not valid JSON ({e}).") from e
    logger.debug("Loaded covering document %s", path)
    return from_dict(data)


# --- FUZZ CONFIGURATION FILES ---

def load_yaml(path):
    """Reads a YAML mapping (fuzz configuration); an empty file gives {}."""
    path = Path(path)
    with open(path, 'r', encoding='utf-8') as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise SchemaError(f"{path}: not valid YAML ({e}).") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected a mapping at the top level.")
    return data


def save_yaml(data, path):
    with open(Path(path), 'w', encoding='utf-8') as f:
        yaml.safe_dump(data, f, sort_keys=True, default_flow_style=False)
