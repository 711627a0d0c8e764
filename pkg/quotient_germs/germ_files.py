"""
Reading graph files and germ files.

Both are JSON objects (YAML is accepted for .yaml/.yml paths). A graph file
holds ``minimal_resolution``, ``vertices`` and ``edges``; a germ file adds a
``boundary`` list. Every problem is raised as a GermFileError naming the
file, the line when it can be found, and the violated invariant.
"""

import json
import re
from pathlib import Path
from typing import Any, Optional, Tuple

import yaml

from .errors import GermFileError, InvalidGraphError, InvalidParametersError
from .log_discrepancy import BoundaryData
from .logger import get_logger
from .resolution_graph import ResolutionGraph, validate

# diagnostic code -> top-level key whose line is reported
DIAGNOSTIC_KEYS = {
    'SelfLoop': 'edges',
    'BadMultiplicity': 'edges',
    'NotConnected': 'edges',
    'NotNegativeDefinite': 'vertices',
    'NotMinimalResolution': 'vertices',
}

_POSITION = re.compile(r"(vertices|edges|boundary)\[(\d+)\]")


def _read_document(path: Path) -> Tuple[Any, str]:
    try:
        text = path.read_text()
    except OSError as e:
        raise GermFileError(str(path), 'Readable', e.strerror or str(e)) from None

    if path.suffix in ('.yaml', '.yml'):
        try:
            return yaml.safe_load(text), text
        except yaml.YAMLError as e:
            mark = getattr(e, 'problem_mark', None)
            raise GermFileError(str(path), 'Syntax', str(e).splitlines()[0], mark.line + 1 if mark else None) from None
    try:
        return json.loads(text), text
    except json.JSONDecodeError as e:
        raise GermFileError(str(path), 'Syntax', e.msg, e.lineno) from None


def locate(text: str, key: str, index: Optional[int] = None) -> Optional[int]:
    """1-based line of a top-level key (or of one item of its list), if it can be found."""
    try:
        root = yaml.compose(text)
    except yaml.YAMLError:
        return None
    if not isinstance(root, yaml.MappingNode):
        return None
    for key_node, value_node in root.value:
        if key_node.value != key:
            continue
        if index is not None and isinstance(value_node, yaml.SequenceNode) and index < len(value_node.value):
            return value_node.value[index].start_mark.line + 1
        return key_node.start_mark.line + 1
    return None


def _line_for_message(text: str, message: str) -> Optional[int]:
    match = _POSITION.search(message)
    if match:
        return locate(text, match.group(1), int(match.group(2)))
    for key in ('minimal_resolution', 'vertices', 'edges', 'boundary'):
        if key in message:
            return locate(text, key)
    return None


def _graph_from(document: Any, text: str, path: Path, extra_keys=()) -> ResolutionGraph:
    try:
        graph = ResolutionGraph.from_document(document, label=path.stem, extra_keys=extra_keys)
    except InvalidGraphError as e:
        raise GermFileError(str(path), 'GraphFormat', str(e), _line_for_message(text, str(e))) from None

    diagnostics = validate(graph)
    if diagnostics:
        first = diagnostics[0]
        line = locate(text, DIAGNOSTIC_KEYS.get(first.code, 'vertices'))
        detail = '; '.join(str(d) for d in diagnostics[1:])
        message = first.message + (f" (also {detail})" if detail else '')
        raise GermFileError(str(path), first.code, message, line)
    return graph


def load_graph_file(path) -> ResolutionGraph:
    """Parse and validate a graph file."""
    path = Path(path)
    document, text = _read_document(path)
    graph = _graph_from(document, text, path)
    get_logger().debug(f"Loaded {path}: {len(graph)} vertices, {len(graph.edges)} edges")
    return graph


def load_germ_file(path) -> Tuple[ResolutionGraph, BoundaryData]:
    """Parse and validate a germ file: a graph file with a ``boundary`` list."""
    path = Path(path)
    document, text = _read_document(path)
    graph = _graph_from(document, text, path, extra_keys=('boundary',))
    try:
        boundary = BoundaryData.from_document(document.get('boundary', []), len(graph))
    except InvalidParametersError as e:
        invariant = 'CoefficientRange' if 'outside [0, 1]' in str(e) else 'BoundaryFormat'
        line = _line_for_message(text, str(e)) or locate(text, 'boundary')
        raise GermFileError(str(path), invariant, str(e), line) from None
    get_logger().debug(f"Loaded {path}: {len(boundary)} boundary curve(s)")
    return graph, boundary


def write_graph_file(path, graph: ResolutionGraph):
    Path(path).write_text(json.dumps(graph.to_document(), indent=2) + '\n')
