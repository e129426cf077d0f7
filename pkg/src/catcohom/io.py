"""Reading and writing the JSON document formats used by the CLI.

Every document is a JSON object carrying a ``schema`` string so files
are self-describing.  Writers emit canonical JSON (sorted keys, fixed
separators, trailing newline) so identical data always serializes to
identical bytes.
"""

import json
import os
import tempfile

import numpy as np

from . import linalg
from .errors import ParseError
from .fincat import CatFunctor, FiniteCategory, validate_category
from .modcat import CatModule
from .groupcats import FiniteGroup, from_permutations

CATEGORY_SCHEMA = "catcohom/category/1"
MODULE_SCHEMA = "catcohom/module/1"
FUNCTOR_SCHEMA = "catcohom/functor/1"
GROUP_SCHEMA = "catcohom/group/1"
COLLECTION_SCHEMA = "catcohom/collection/1"
REPORT_SCHEMA = "catcohom/report/1"

FIELD_TAGS = {"F2": 2, "F3": 3, "F5": 5, "Q": None}


def parse_field(tag):
    """Field from a tag such as F2, F7, or Q."""
    if tag in FIELD_TAGS:
        return linalg.Field(FIELD_TAGS[tag])
    if tag.startswith("F") and tag[1:].isdigit():
        return linalg.Field(int(tag[1:]))
    raise ParseError(f"unknown field tag {tag!r}")


def field_tag(field):
    return "Q" if field.is_rational else f"F{field.p}"


def canonical_json(doc):
    """Canonical byte serialization: sorted keys, no spaces, newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def load_document(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not isinstance(doc, dict) or "schema" not in doc:
        raise ParseError(f"{path}: not a schema-tagged JSON object")
    return doc


def write_document(path, doc):
    """Atomic write: serialize to a temp file, then rename into place."""
    data = canonical_json(doc)
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _expect(doc, schema, what):
    if doc.get("schema") != schema:
        raise ParseError(f"expected a {what} document, got schema {doc.get('schema')!r}")


# ---------------------------------------------------------------- categories


def category_to_doc(C):
    return {
        "schema": CATEGORY_SCHEMA,
        "name": C.name,
        "objects": list(C.objects),
        "morphisms": [{"id": m.mid, "src": m.src, "tgt": m.tgt} for m in C.morphisms],
        "identity": dict(C.identity),
        "compose": [[g, f, gf] for (g, f), gf in sorted(C.compose_table.items())],
    }


def category_from_doc(doc):
    _expect(doc, CATEGORY_SCHEMA, "category")
    try:
        triples = [(m["id"], m["src"], m["tgt"]) for m in doc["morphisms"]]
        compose = {(g, f): gf for g, f, gf in doc["compose"]}
        return validate_category(doc["name"], doc["objects"], triples, doc["identity"], compose)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed category document: {exc}") from None


# ------------------------------------------------------------------- modules


def module_to_doc(M):
    mats = {}
    for m in M.cat.morphisms:
        A = M.mats[m.mid]
        if M.field.is_rational:
            rows = [[str(x) for x in row] for row in A.tolist()]
        else:
            rows = A.tolist()
        mats[m.mid] = rows
    return {
        "schema": MODULE_SCHEMA,
        "name": M.name,
        "field": field_tag(M.field),
        "variance": M.variance,
        "category": M.cat.name,
        "dims": dict(M.dims),
        "matrices": mats,
    }


def module_from_doc(doc, C):
    """Rebuild a module over an already-loaded category ``C``."""
    _expect(doc, MODULE_SCHEMA, "module")
    fld = parse_field(doc["field"])
    try:
        dims = {x: int(d) for x, d in doc["dims"].items()}
        mats = {}
        for mid, rows in doc["matrices"].items():
            m = C.mor(mid)
            # row/column counts come from the declared dimensions so that
            # empty matrices round-trip with the right shape
            if doc["variance"] == "right":
                nr, nc = dims[m.src], dims[m.tgt]
            else:
                nr, nc = dims[m.tgt], dims[m.src]
            if fld.is_rational:
                flat = [_fraction(x) for row in rows for x in row]
                A = linalg.zeros(fld, nr, nc)
                for i in range(nr):
                    for j in range(nc):
                        A[i, j] = flat[i * nc + j]
            else:
                A = linalg.reduce_entries(
                    fld, np.array(rows, dtype=np.int64).reshape(nr, nc))
            mats[mid] = A
        return CatModule(doc["name"], C, fld, doc["variance"], dims, mats).validate()
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed module document: {exc}") from None


def _fraction(x):
    from fractions import Fraction

    return Fraction(str(x))


# ------------------------------------------------------------------ functors


def functor_to_doc(F):
    return {
        "schema": FUNCTOR_SCHEMA,
        "name": F.name,
        "source": category_to_doc(F.source),
        "target": category_to_doc(F.target),
        "objects": dict(F.obj_map),
        "morphisms": dict(F.mor_map),
    }


def functor_from_doc(doc):
    _expect(doc, FUNCTOR_SCHEMA, "functor")
    try:
        src = category_from_doc(doc["source"])
        tgt = category_from_doc(doc["target"])
        return CatFunctor(doc["name"], src, tgt, dict(doc["objects"]), dict(doc["morphisms"])).validate()
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed functor document: {exc}") from None


# -------------------------------------------------------------------- groups


def group_to_doc(G):
    return {
        "schema": GROUP_SCHEMA,
        "name": G.name,
        "elements": list(G.labels),
        "table": [list(row) for row in G.table],
    }


def group_from_doc(doc):
    """A group from either a multiplication table or permutation generators."""
    _expect(doc, GROUP_SCHEMA, "group")
    try:
        if "generators" in doc:
            gens = [tuple(g) for g in doc["generators"]]
            return from_permutations(doc["name"], gens)
        labels = tuple(doc["elements"])
        table = tuple(tuple(row) for row in doc["table"])
        return FiniteGroup(doc["name"], labels, table)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed group document: {exc}") from None


# --------------------------------------------------------------- collections


def collection_to_doc(coll):
    return {
        "schema": COLLECTION_SCHEMA,
        "group": coll.group.name,
        "subgroups": [sorted(H) for H in coll.subgroups],
    }


def collection_subgroups_from_doc(doc):
    _expect(doc, COLLECTION_SCHEMA, "collection")
    try:
        return [frozenset(int(i) for i in H) for H in doc["subgroups"]]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed collection document: {exc}") from None
