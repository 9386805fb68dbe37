"""Reading input documents

Documents are JSON objects whose optional `kind` field names how the lattice
configuration is described. Without it, the document kind is `exponents` or
`lattices`, whichever of those two fields is present:

* ``exponents``: ``{"p": 2, "exponents": [[0, 0], [1, 0]]}``, one apartment row per lattice
* ``lattices``: ``{"p": 3, "d": 2, "lattices": [[["1", "t^-1"], ["0", "1"]], ...]}``,
  one basis matrix per lattice whose columns span it; entries are integers
  or Laurent polynomials in ``t``
* ``tree``: ``{"p": 2, "edges": [[0, 1], [1, 2]], "root": 0}``
* ``local-model``: ``{"p": 2, "n": 2, "d": 3}``
* ``chain``: ``{"p": 2, "g": [...], "h": [...]}``, the maps of a 0-linked
  chain of vector spaces

Tropical documents (``{"graph": {...}, "w0": [...], "concentrated": [...]}``)
and hull documents (``{"points": [...]}``) do not describe a configuration and
have their own readers below.
"""
import json
import logging
from tokenize import TokenError
from typing import Any, Dict, List, Tuple, Union

import networkx as nx
import sympy
from fs import open_fs
from fs.base import FS
from fs.errors import ResourceNotFound
from sympy.parsing.sympy_parser import (convert_xor, implicit_multiplication_application, parse_expr,
                                        standard_transformations)

from linkedgrass import exc
from linkedgrass.dvr import (Lattice, LatticeConfiguration, LaurentMatrix, LaurentScalar, config_from_exponents,
                             config_from_tree, config_local_model, convex_closure)
from linkedgrass.linalg import FieldMatrix
from linkedgrass.rep import linked_chain_equivalence
from linkedgrass.tropical import DualGraph
from linkedgrass.util import check_prime, get_callable

_log = logging.getLogger(__name__)

Document = Dict[str, Any]

INGEST_FORMATS = {'exponents': 'linkedgrass.ingest:exponents_configuration',
                  'lattices': 'linkedgrass.ingest:lattices_configuration',
                  'tree': 'linkedgrass.ingest:tree_configuration',
                  'local-model': 'linkedgrass.ingest:local_model_configuration',
                  'chain': 'linkedgrass.ingest:chain_configuration'}

_TRANSFORMATIONS = standard_transformations + (implicit_multiplication_application, convert_xor)

_T = sympy.Symbol('t')


def parse_scalar(text, p):
    # type: (str, int) -> LaurentScalar
    """Parse a Laurent polynomial (or a quotient of two) in `t` over F_p

    >>> sorted(parse_scalar('3*t^-2 + t', 5).coefficients.items())
    [(-2, 3), (1, 1)]

    >>> sorted(parse_scalar('4t - 1', 3).coefficients.items())
    [(0, 2), (1, 1)]

    >>> parse_scalar('t^2 / (1 + t)', 3).valuation()
    2

    >>> parse_scalar('t +* 2', 3)  # doctest: +ELLIPSIS
    Traceback (most recent call last):
    ...
    linkedgrass.exc.ParseError: Malformed scalar 't +* 2'...
    """
    try:
        expression = parse_expr(str(text), local_dict={'t': _T}, transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, ValueError, TokenError, sympy.SympifyError) as e:
        raise exc.ParseError("Malformed scalar {!r}".format(text), column=getattr(e, 'offset', None))
    if not isinstance(expression, sympy.Expr) or not expression.free_symbols <= {_T}:
        raise exc.ParseError("Only the variable t may appear in a scalar, got {!r}".format(text))
    numerator, denominator = sympy.fraction(sympy.together(expression))
    try:
        top = _poly_coefficients(numerator, p)
        bottom = _poly_coefficients(denominator, p)
    except sympy.PolynomialError:
        raise exc.ParseError("{!r} is not a rational function of t".format(text))
    if not any(bottom.values()):
        raise exc.ParseError("The denominator of {!r} vanishes modulo {}".format(text, p))
    return LaurentScalar(top, p) / LaurentScalar(bottom, p)


def _poly_coefficients(expression, p):
    # type: (sympy.Expr, int) -> Dict[int, int]
    coefficients = {}  # type: Dict[int, int]
    for (exponent,), value in sympy.Poly(expression, _T).terms():
        value = sympy.Rational(value)
        if value.q % p == 0:
            raise exc.ParseError("Coefficient {} is not defined modulo {}".format(value, p))
        coefficients[int(exponent)] = int(value.p) * int(sympy.mod_inverse(int(value.q), p)) % p
    return coefficients


def parse_document(text):
    # type: (str) -> Document
    """Parse the JSON text of a document

    >>> parse_document('{"kind": "exponents", "p": 2, "exponents": [[0]]}')['kind']
    'exponents'

    >>> parse_document('{"kind": "exponents",\\n "p": }')
    Traceback (most recent call last):
    ...
    linkedgrass.exc.ParseError: Expecting value (line 2, column 7)
    """
    try:
        document = json.loads(text)
    except ValueError as e:
        raise exc.ParseError(getattr(e, 'msg', str(e)), line=getattr(e, 'lineno', None),
                             column=getattr(e, 'colno', None))
    if not isinstance(document, dict):
        raise exc.ParseError("A document must be a JSON object", line=1, column=1)
    return document


def read_document(fs_url, path):
    # type: (Union[str, FS], str) -> Tuple[Document, str]
    """Read and parse a document from a filesystem; also returns the raw text for provenance

    `fs_url` is a PyFilesystem URL or an open filesystem, which is left open.
    """
    filesystem = open_fs(fs_url)
    try:
        text = filesystem.readtext(path)
    except ResourceNotFound:
        raise exc.ParseError("Document {} not found in {}".format(path, fs_url))
    finally:
        if filesystem is not fs_url:
            filesystem.close()
    _log.debug("Read %d characters from %s/%s", len(text), fs_url, path)
    return parse_document(text), text


def _field(document, name):
    if name not in document:
        raise exc.ParseError("Missing field '{}'".format(name))
    return document[name]


def _prime(document):
    # type: (Document) -> int
    p = _field(document, 'p')
    try:
        return check_prime(p)
    except ValueError as e:
        raise exc.ParseError(str(e))


def _labels(document):
    labels = document.get('labels')
    return [str(label) for label in labels] if labels is not None else None


def _int_matrix(value, name):
    # type: (Any, str) -> List[List[int]]
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise exc.ParseError("'{}' must be a list of integer rows".format(name))
    try:
        return [[int(entry) for entry in row] for row in value]
    except (TypeError, ValueError):
        raise exc.ParseError("'{}' must contain integers only".format(name))


def exponents_configuration(document):
    # type: (Document) -> LatticeConfiguration
    p = _prime(document)
    exponents = _int_matrix(_field(document, 'exponents'), 'exponents')
    if not exponents:
        raise exc.ParseError("Expecting at least one exponent row")
    if 'd' in document and any(len(row) != int(document['d']) for row in exponents):
        raise exc.ParseError("Exponent rows must have d = {} entries".format(document['d']))
    return config_from_exponents(exponents, p, labels=_labels(document))


def lattices_configuration(document):
    # type: (Document) -> LatticeConfiguration
    p = _prime(document)
    lattices = _field(document, 'lattices')
    if not isinstance(lattices, list) or not lattices:
        raise exc.ParseError("Expecting a non-empty list of lattices")
    d = int(document.get('d', len(lattices[0])))
    bases = []
    for index, matrix in enumerate(lattices):
        if not isinstance(matrix, list) or len(matrix) != d or any(
                not isinstance(row, list) or len(row) != d for row in matrix):
            raise exc.ParseError("Lattice {} must have a {}x{} basis matrix".format(index, d, d))
        entries = [[_entry(entry, p, index) for entry in row] for row in matrix]
        bases.append(Lattice(LaurentMatrix(entries, p)))
    return LatticeConfiguration(bases, labels=_labels(document))


def _entry(value, p, index):
    if isinstance(value, bool):
        raise exc.ParseError("Unexpected boolean in lattice {}".format(index))
    if isinstance(value, int):
        return LaurentScalar.coerce(value, p)
    if isinstance(value, str):
        return parse_scalar(value, p)
    raise exc.ParseError("Unexpected entry {!r} in lattice {}".format(value, index))


def tree_configuration(document):
    # type: (Document) -> LatticeConfiguration
    p = _prime(document)
    tree = nx.Graph()
    for edge in _field(document, 'edges'):
        if not isinstance(edge, list) or len(edge) != 2:
            raise exc.ParseError("Tree edges are pairs of vertices, got {!r}".format(edge))
        tree.add_edge(*edge)
    if not tree:
        tree.add_node(document.get('root', 0))
    return config_from_tree(tree, document.get('root', min(tree.nodes)), p)


def local_model_configuration(document):
    # type: (Document) -> LatticeConfiguration
    return config_local_model(int(_field(document, 'n')), int(_field(document, 'd')), _prime(document))


def chain_configuration(document):
    # type: (Document) -> LatticeConfiguration
    p = _prime(document)
    g_maps = [FieldMatrix(_int_matrix(matrix, 'g'), p) for matrix in _field(document, 'g')]
    h_maps = [FieldMatrix(_int_matrix(matrix, 'h'), p) for matrix in _field(document, 'h')]
    if len(g_maps) != len(h_maps):
        raise exc.ParseError("Expecting as many g maps as h maps")
    return linked_chain_equivalence(g_maps, h_maps, p)


def tropical_input(document):
    # type: (Document) -> Tuple[DualGraph, List[int], List[List[int]]]
    """The dual graph, w0 and the concentrated multidegrees of a tropical document
    """
    graph = graph_from_document(_field(document, 'graph'))
    w0 = _int_matrix([_field(document, 'w0')], 'w0')[0]
    concentrated = _int_matrix(_field(document, 'concentrated'), 'concentrated')
    if len(w0) != len(graph) or any(len(w) != len(graph) for w in concentrated):
        raise exc.ParseError("Multidegrees must have one entry per vertex of the graph")
    return graph, w0, concentrated


def graph_from_document(value):
    # type: (Dict[str, Any]) -> DualGraph
    """``{"vertices": 3, "edges": [[0, 1], [0, 1], [1, 2]]}``; repeated edges are parallel
    """
    if not isinstance(value, dict):
        raise exc.ParseError("'graph' must be an object")
    edges = _int_matrix(value.get('edges', []), 'edges')
    if any(len(edge) != 2 for edge in edges):
        raise exc.ParseError("Graph edges are pairs of vertices")
    return DualGraph(int(_field(value, 'vertices')), [(i, j) for i, j in edges])


def hull_points(document):
    # type: (Document) -> List[List[int]]
    points = _int_matrix(_field(document, 'points'), 'points')
    if not points:
        raise exc.ParseError("Expecting at least one point")
    if len(set(len(point) for point in points)) != 1:
        raise exc.ParseError("All points must have the same number of coordinates")
    return points


def create_configuration(kind, document):
    # type: (str, Document) -> LatticeConfiguration
    """Factory for lattice configurations

    `kind` is a key of :data:`INGEST_FORMATS` or a ``module:callable`` string;
    the callable receives the whole document.
    """
    if ':' not in kind:
        try:
            kind = INGEST_FORMATS[kind]
        except KeyError:
            raise exc.ParseError("Unknown document kind: {}".format(kind))

    builder = get_callable(kind)
    return builder(document)  # type: ignore


def document_kind(document):
    # type: (Document) -> str
    """The `kind` of a configuration document, inferred from its fields when absent

    >>> document_kind({'p': 2, 'd': 1, 'exponents': [[0]]})
    'exponents'

    >>> document_kind({'kind': 'tree', 'p': 2, 'edges': []})
    'tree'
    """
    kind = document.get('kind')
    if kind is not None:
        if not isinstance(kind, str):
            raise exc.ParseError("'kind' must be a string, got {!r}".format(kind))
        return kind
    present = [name for name in ('exponents', 'lattices') if name in document]
    if len(present) != 1:
        raise exc.ParseError("Expecting exactly one of 'exponents' or 'lattices', or an explicit 'kind'")
    return present[0]


def load_configuration(fs_url, path, close=False):
    # type: (Union[str, FS], str, bool) -> Tuple[LatticeConfiguration, str]
    """Read a configuration document; with `close` the convex closure of its classes is returned

    Also returns the raw document text.
    """
    document, text = read_document(fs_url, path)
    configuration = create_configuration(document_kind(document), document)
    if close:
        closed = convex_closure(configuration.classes)
        if len(closed) > len(configuration):
            _log.info("Convex closure added %d classes", len(closed) - len(configuration))
            configuration = closed
    elif not configuration.is_convex():
        raise exc.NotConvex("The configuration is not convex; pass close=True to take its convex closure")
    return configuration, text
