import json
import logging
import os
import sys

import numpy as np

from moreau.calcerror import ValidationError
from moreau.epiconv import QuadSeq1D, \
                           builtin_family
from moreau.extreal import ExtReal, \
                           INF_TOKEN
from moreau.glq import GlqFunction, \
                       QuadraticFunction
from moreau.linrel import LinearRelation
from moreau.subspace import Subspace

MODULE = 'jsonio.py'

#
# exit codes of the command line tool:
# use the numbers for sys.exit and comparisons
# use the longer form for messages
#
_0_ = 0
_0_OK_ = '0 - command succeeded'
OK = _0_
_2_ = 2
_2_INVALID_INPUT_ = '2 - input is malformed or violates a precondition'
INVALID_INPUT = _2_
_3_ = 3
_3_INFEASIBLE_ = '3 - request is well formed but mathematically infeasible'
INFEASIBLE = _3_

EXIT_MSGS = {
             _0_: _0_OK_,
             _2_: _2_INVALID_INPUT_,
             _3_: _3_INFEASIBLE_
            }

# sequence kinds
EXPLICIT = 'explicit'
FORMULA_1D = 'formula_1d'

# error messages
MALFORMED_JSON = 'Input is not valid JSON'
BAD_SCHEMA = 'Input does not follow the expected schema'
UNREADABLE_FILE = 'Input file cannot be read'

logger = logging.getLogger(__name__)


def load_document(source):
    """
    load_document parses a JSON document.  source is a path to a JSON file,
    "-" for standard input, or the JSON text itself.

    Parameters:
        source: file path, "-" or inline JSON
            type: str
            default: none
            required: yes

    Return Values:
        dict or list: the parsed document

    Usage:
        doc = load_document('glq.json')
        doc = load_document('{"relation": {"matrix": [[1]]}, "c": 2}')
    """
    if source == '-':
        text = sys.stdin.read()
    elif os.path.isfile(source):
        try:
            with open(source) as handle:
                text = handle.read()
        except OSError as error:
            raise ValidationError(
                MODULE, 'load_document', UNREADABLE_FILE,
                'readable file', source, str(error)
                                 )
    else:
        text = source
    try:
        document = json.loads(text)
    except ValueError as error:
        raise ValidationError(
            MODULE, 'load_document', MALFORMED_JSON,
            'JSON text or path to a JSON file', text[:80], str(error)
                             )
    logger.debug('load_document: parsed %s', type(document).__name__)
    return document

# end load_document()


def _schema_error(function, expected, received):
    return ValidationError(MODULE, function, BAD_SCHEMA, expected,
                           str(received)[:80], '')


def _require(document, key, function):
    if not isinstance(document, dict) or key not in document:
        raise _schema_error(function, 'key "%s"' % key, document)
    return document[key]


def decode_relation(document, tol=None):
    """
    decode_relation accepts one of

        {"matrix": [[...]]}
        {"graph_basis": [[...]]}            columns of R^(2n)
        {"normal_cone_of_span": [[...]], "n": int}
        {"scaled_identity": {"n": int, "lambda": real}}

    "n" is only needed for the normal cone of an empty span.
    """
    try:
        if 'matrix' in document:
            return LinearRelation.from_matrix(document['matrix'], tol)
        if 'graph_basis' in document:
            columns = np.asarray(document['graph_basis'], dtype=float)
            return LinearRelation.from_graph_basis(columns.shape[1] // 2,
                                                   columns.T, tol)
        if 'normal_cone_of_span' in document:
            span = Subspace.span(document['normal_cone_of_span'], tol,
                                 document.get('n'))
            return LinearRelation.normal_cone_of(span, tol)
        if 'scaled_identity' in document:
            spec = document['scaled_identity']
            return LinearRelation.scaled_identity(int(spec['n']),
                                                  float(spec['lambda']), tol)
    except (TypeError, KeyError, IndexError, ValueError) as error:
        raise _schema_error('decode_relation', 'relation schema', error)
    raise _schema_error(
        'decode_relation',
        'one of matrix, graph_basis, normal_cone_of_span, scaled_identity',
        document
                       )

# end decode_relation()


def _vector_or_none(document, key):
    value = document.get(key)
    return None if value is None else np.asarray(value, dtype=float)


def decode_glq(document, tol=None):
    """
    decode_glq reads {"relation": {...}, "a": [...], "b": [...], "c": real};
    a, b and c are optional and default to zero.
    """
    relation = decode_relation(_require(document, 'relation', 'decode_glq'), tol)
    try:
        return GlqFunction(relation, _vector_or_none(document, 'a'),
                           _vector_or_none(document, 'b'),
                           float(document.get('c', 0.0)), tol)
    except (TypeError, ValueError) as error:
        raise _schema_error('decode_glq', 'GLQ schema', error)


def decode_quadratic(document, tol=None):
    """
    decode_quadratic reads {"Q": [[...]], "b": [...], "c": real}.
    """
    try:
        return QuadraticFunction(_require(document, 'Q', 'decode_quadratic'),
                                 _vector_or_none(document, 'b'),
                                 float(document.get('c', 0.0)), tol)
    except (TypeError, ValueError) as error:
        raise _schema_error('decode_quadratic', 'quadratic schema', error)


def decode_envelope_1d(document):
    """
    decode_envelope_1d reads {"alpha": real, "beta": real, "gamma": real},
    the coefficients of alpha x^2 + beta x + gamma; beta and gamma default
    to zero.

    Return Values:
        tuple: (alpha, beta, gamma) as floats
    """
    alpha = _require(document, 'alpha', 'decode_envelope_1d')
    try:
        coefficients = (float(alpha), float(document.get('beta', 0.0)),
                        float(document.get('gamma', 0.0)))
    except (TypeError, ValueError) as error:
        raise _schema_error('decode_envelope_1d', 'real alpha, beta, gamma', error)
    if not all(np.isfinite(coefficients)):
        raise _schema_error('decode_envelope_1d', 'finite coefficients',
                            coefficients)
    return coefficients


def decode_sequence_1d(document, r):
    """
    decode_sequence_1d reads a 1-D sequence and its probe indices:

        {"kind": "explicit", "terms": [{"a": .., "b": .., "c": ..}, ...]}
        {"kind": "formula_1d", "name": "fk" | "gk" | "hk", "k_list": [...]}

    An explicit sequence is probed at every index unless "k_list" is given.

    Return Values:
        tuple: (QuadSeq1D, list of int)
    """
    kind = _require(document, 'kind', 'decode_sequence_1d')
    try:
        if kind == EXPLICIT:
            terms = [(t['a'], t['b'], t['c']) for t in document['terms']]
            seq = QuadSeq1D(terms=terms, r=r)
            k_list = document.get('k_list', list(range(1, len(terms) + 1)))
            return seq, [int(k) for k in k_list]
        if kind == FORMULA_1D:
            name = document['name']
            builtin_family(name, 1)
            return QuadSeq1D.family(name, r), \
                [int(k) for k in document['k_list']]
    except (TypeError, KeyError, ValueError) as error:
        raise _schema_error('decode_sequence_1d', 'sequence schema', error)
    raise _schema_error('decode_sequence_1d',
                        'kind "%s" or "%s"' % (EXPLICIT, FORMULA_1D), kind)


def decode_sequence(document, tol=None):
    """
    decode_sequence reads a list of GLQ schemas, or {"terms": [...]}.
    """
    if isinstance(document, dict):
        document = _require(document, 'terms', 'decode_sequence')
    if not isinstance(document, list):
        raise _schema_error('decode_sequence', 'list of GLQ schemas', document)
    return [decode_glq(term, tol) for term in document]


def decode_lstsq(document):
    """
    decode_lstsq reads {"lstsq": {"M": [[...]], "b": [...]}} or the inner
    object alone and returns (M, b).
    """
    if isinstance(document, dict) and 'lstsq' in document:
        document = document['lstsq']
    try:
        return (np.asarray(_require(document, 'M', 'decode_lstsq'), dtype=float),
                np.asarray(_require(document, 'b', 'decode_lstsq'), dtype=float))
    except (TypeError, ValueError) as error:
        raise _schema_error('decode_lstsq', 'least squares schema', error)


def encode_value(value):
    """
    Converts numbers, arrays and ExtReals into JSON friendly values; +inf
    becomes the string "inf".
    """
    if isinstance(value, ExtReal):
        return value.to_json()
    if isinstance(value, np.ndarray):
        return [encode_value(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    if isinstance(value, (float, np.floating)):
        return INF_TOKEN if value == float('inf') else float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


def encode_subspace(space):
    return {'dim': space.dim, 'basis': encode_value(space.basis.T)}


def encode_relation(relation, tol=None):
    """
    Single-valued relations with full domain are written as {"matrix"},
    every other relation as {"graph_basis"}.
    """
    n = relation.n
    if relation.dom(tol).dim == n and relation.multivalued_part(tol).dim == 0:
        columns = [relation.apply(e, tol).point for e in np.eye(n)]
        return {'matrix': encode_value(np.column_stack(columns))}
    return {'graph_basis': encode_value(relation.graph.basis.T)}


def encode_glq(f, tol=None):
    return {
        'relation': encode_relation(f.relation, tol),
        'a': encode_value(f.a),
        'b': encode_value(f.b),
        'c': encode_value(f.c)
    }


def encode_quadratic(q):
    return {
        'Q': encode_value(q.Q),
        'b': encode_value(q.b),
        'c': encode_value(q.c)
    }


def encode_affine_set(s):
    if s.is_empty:
        return {'empty': True, 'point': None, 'directions': []}
    return {
        'empty': False,
        'point': encode_value(s.point),
        'directions': encode_value(s.directions.basis.T)
    }


def _numpy_default(value):
    # numpy scalars such as np.bool_ are not json serializable
    if isinstance(value, (np.generic, np.ndarray)):
        return encode_value(value.tolist())
    raise TypeError('%s is not JSON serializable' % type(value).__name__)


def dumps(document):
    """
    Serializes a result document with a fixed key order.
    """
    return json.dumps(document, indent=2, default=_numpy_default)
