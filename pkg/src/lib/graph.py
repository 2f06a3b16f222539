import logging
import numpy as np
import pandas as pd
import re

from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import StrEnum
from lib.errors import (DuplicateConflict, FrozenGraph, GraphNotFrozen,
                        SelfLoop, UnknownEntity)
from scipy import sparse

logger = logging.getLogger('')

RTYPE_PATTERN = re.compile(r'[A-Z_]+')


class EntityType(StrEnum):
    PROTEIN = 'protein'
    DRUG = 'drug'
    DISEASE = 'disease'
    TAXONOMY = 'taxonomy'

    @classmethod
    def from_label(cls, label: str) -> 'EntityType':
        """
        Map a type label onto one of the four entity types, ignoring case
        and surrounding whitespace
        """
        try:
            return cls(label.strip().lower())
        except ValueError:
            raise ValueError(f"Unknown entity type: {label!r}") from None


@dataclass(frozen=True)
class Entity:
    id: str
    name: str
    etype: EntityType

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("Entity id is empty")
        if any(c in self.id for c in '\t\r\n'):
            raise ValueError(f"Entity id contains tab or newline: {self.id!r}")
        if not isinstance(self.etype, EntityType):
            object.__setattr__(self, 'etype', EntityType.from_label(self.etype))


@dataclass(frozen=True)
class Relation:
    """
    A typed, directed relation between two entities as extracted.
    `evidence` holds opaque document reference ids and may be empty.
    """
    src: str
    dst: str
    rtype: str
    evidence: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not self.src or not self.dst:
            raise ValueError("Relation endpoint is empty")
        if not RTYPE_PATTERN.fullmatch(self.rtype):
            raise ValueError(f"Invalid relation type: {self.rtype!r}")
        if self.src == self.dst:
            raise SelfLoop(f"Relation {self.rtype} from {self.src!r} to itself")
        if not isinstance(self.evidence, frozenset):
            object.__setattr__(self, 'evidence', frozenset(self.evidence))

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.src, self.dst, self.rtype)


class KnowledgeGraph:
    """
    Typed multigraph of entities and relations.

    Built by a single writer through `add_entity` and `add_relation`, then
    frozen. Freezing builds the collapsed view every analysis runs on: the
    entity ids in lexicographic order mapped to 0..n-1, and a symmetric 0/1
    CSR adjacency matrix with an edge wherever at least one relation of any
    type links two entities in either direction. A frozen graph is immutable
    and can be shared between threads.
    """

    def __init__(self) -> None:
        self._entities: dict[str, Entity] = {}
        self._relations: dict[tuple[str, str, str], set[str]] = {}
        self._frozen = False
        self._ids: tuple[str, ...] = ()
        self._index: dict[str, int] = {}
        self._adjacency: sparse.csr_array | None = None
        self._pair_rtypes: dict[tuple[str, str], set[str]] = {}
        self._nodes: pd.DataFrame | None = None

    def __len__(self) -> int:
        return len(self._entities)

    def __contains__(self, entity_id: object) -> bool:
        return entity_id in self._entities

    @property
    def frozen(self) -> bool:
        return self._frozen

    def add_entity(self, entity: Entity) -> bool:
        """
        Store an entity.

        :param entity: The entity to add
        :return: True if the entity is new, False if an identical entity
                 was already stored
        :raises FrozenGraph: if the graph has been frozen
        :raises DuplicateConflict: if the id exists with another name or type
        """
        if self._frozen:
            raise FrozenGraph("Cannot add entities to a frozen graph")
        existing = self._entities.get(entity.id)
        if existing is None:
            self._entities[entity.id] = entity
            return True
        if existing != entity:
            raise DuplicateConflict(
                f"Entity {entity.id!r} already defined as "
                f"({existing.name!r}, {existing.etype}), "
                f"got ({entity.name!r}, {entity.etype})")
        return False

    def add_relation(self, relation: Relation) -> bool:
        """
        Store a relation. A relation with the same (src, dst, rtype) as a
        stored one is merged into it by unioning the evidence.

        :param relation: The relation to add
        :return: True if the relation is new, False if it was merged
        :raises FrozenGraph: if the graph has been frozen
        :raises UnknownEntity: if either endpoint has not been added
        """
        if self._frozen:
            raise FrozenGraph("Cannot add relations to a frozen graph")
        missing = [e for e in (relation.src, relation.dst)
                   if e not in self._entities]
        if missing:
            raise UnknownEntity(missing)
        evidence = self._relations.get(relation.key)
        if evidence is None:
            self._relations[relation.key] = set(relation.evidence)
            return True
        evidence.update(relation.evidence)
        return False

    def freeze(self) -> 'KnowledgeGraph':
        if self._frozen:
            return self
        ids = tuple(sorted(self._entities))
        index = {entity_id: i for i, entity_id in enumerate(ids)}
        n = len(ids)

        pair_rtypes: dict[tuple[str, str], set[str]] = {}
        for src, dst, rtype in self._relations:
            pair = (src, dst) if src < dst else (dst, src)
            pair_rtypes.setdefault(pair, set()).add(rtype)

        pairs = np.array([(index[u], index[v]) for u, v in pair_rtypes],
                         dtype=np.int64).reshape(-1, 2)
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        data = np.ones(len(rows), dtype=np.float64)
        adjacency = sparse.csr_array((data, (rows, cols)), shape=(n, n))
        adjacency.sort_indices()

        self._ids = ids
        self._index = index
        self._adjacency = adjacency
        self._pair_rtypes = pair_rtypes
        self._nodes = pd.DataFrame(
            {'name': [self._entities[i].name for i in ids],
             'type': [str(self._entities[i].etype) for i in ids]},
            index=pd.Index(ids, name='id', dtype=object))
        self._frozen = True
        logger.info(f"Froze graph with {n} entities, {len(self._relations)} "
                    f"relations and {len(pair_rtypes)} collapsed edges")
        return self

    def _require_frozen(self) -> None:
        if not self._frozen:
            raise GraphNotFrozen("Graph must be frozen before analysis")

    @property
    def adjacency(self) -> sparse.csr_array:
        """Symmetric 0/1 adjacency matrix of the collapsed view"""
        self._require_frozen()
        assert self._adjacency is not None
        return self._adjacency

    @property
    def ids(self) -> tuple[str, ...]:
        self._require_frozen()
        return self._ids

    @property
    def nodes(self) -> pd.DataFrame:
        """Node table indexed by id with `name` and `type` columns"""
        self._require_frozen()
        assert self._nodes is not None
        return self._nodes

    @property
    def n(self) -> int:
        return len(self._entities)

    def entity(self, entity_id: str) -> Entity:
        try:
            return self._entities[entity_id]
        except KeyError:
            raise UnknownEntity(entity_id) from None

    def index_of(self, entity_id: str) -> int:
        self._require_frozen()
        try:
            return self._index[entity_id]
        except KeyError:
            raise UnknownEntity(entity_id) from None

    def check_ids(self, entity_ids: Iterable[str]) -> None:
        """Raise UnknownEntity naming every id missing from the graph"""
        missing = [e for e in entity_ids if e not in self._entities]
        if missing:
            raise UnknownEntity(missing)

    def relations(self) -> list[Relation]:
        """All stored relations sorted by (src, dst, rtype)"""
        return [Relation(src, dst, rtype, frozenset(evidence))
                for (src, dst, rtype), evidence in sorted(self._relations.items())]

    def type_counts(self) -> dict[EntityType, int]:
        counts = self.nodes['type'].value_counts()
        return {etype: int(counts.get(str(etype), 0)) for etype in EntityType}

    def neighbor_indices(self, i: int) -> np.ndarray:
        adjacency = self.adjacency
        return adjacency.indices[adjacency.indptr[i]:adjacency.indptr[i + 1]]

    def neighbors(self, entity_id: str) -> list[str]:
        return [self._ids[j] for j in self.neighbor_indices(self.index_of(entity_id))]

    def degree(self, entity_id: str) -> int:
        i = self.index_of(entity_id)
        return int(self.adjacency.indptr[i + 1] - self.adjacency.indptr[i])

    def edge_count(self) -> int:
        return self.adjacency.nnz // 2

    def edges(self) -> list[tuple[str, str]]:
        """Collapsed edges as (u, v) with u < v, in lexicographic order"""
        upper = sparse.triu(self.adjacency, k=1, format='coo')
        order = np.lexsort((upper.col, upper.row))
        return [(self._ids[i], self._ids[j])
                for i, j in zip(upper.row[order], upper.col[order])]

    def relation_types_between(self, a: str, b: str) -> list[str]:
        self._require_frozen()
        self.check_ids([a, b])
        pair = (a, b) if a < b else (b, a)
        return sorted(self._pair_rtypes.get(pair, ()))
