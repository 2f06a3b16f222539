import logging
import numpy as np

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from lib.errors import SameEndpoints
from lib.graph import EntityType, KnowledgeGraph
from scipy import sparse

logger = logging.getLogger('')

TREATS = 'TREATS'

NodePath = tuple[str, ...]


@dataclass(frozen=True)
class Subnetwork:
    """
    Node set of a graph together with every collapsed edge between those
    nodes. `center` is set for ego networks only.
    """
    center: str | None
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    type_counts: dict[EntityType, int] = field(hash=False, compare=False)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class PathConstraint:
    """
    Limits for `paths_between`: at most `max_hops` edges per path, and
    intermediate nodes restricted to `allowed_intermediate_types` unless
    that set is empty. The two endpoints are never type checked.
    """
    max_hops: int = 3
    allowed_intermediate_types: frozenset[EntityType] = frozenset()

    def __post_init__(self) -> None:
        if self.max_hops < 1:
            raise ValueError(f"max_hops must be at least 1, got {self.max_hops}")
        object.__setattr__(self, 'allowed_intermediate_types',
                           frozenset(EntityType.from_label(str(t))
                                     for t in self.allowed_intermediate_types))


@dataclass(frozen=True)
class TreatmentHit:
    """
    A drug linked to a queried disease by a relation of type `rtype`.
    `orientation` is `forward` when stored drug -> disease, `reverse` when
    stored disease -> drug and `both` when both were stored.
    """
    drug: str
    disease: str
    rtype: str
    evidence: frozenset[str]
    orientation: str


def induced_subgraph(graph: KnowledgeGraph, node_ids: Iterable[str],
                     center: str | None = None) -> Subnetwork:
    """
    The given nodes and every collapsed edge of `graph` between two of them.

    :param graph: A frozen graph
    :param node_ids: Ids of the nodes to keep
    :param center: Recorded on the result for ego networks
    :return: The induced subnetwork
    :raises UnknownEntity: listing every id missing from the graph
    """
    members = sorted(set(node_ids))
    graph.check_ids(members)
    if not members:
        return Subnetwork(center, (), (), {etype: 0 for etype in EntityType})

    index = np.array([graph.index_of(m) for m in members], dtype=np.int64)
    block = graph.adjacency[index][:, index]
    upper = sparse.triu(block, k=1, format='coo')
    order = np.lexsort((upper.col, upper.row))
    edges = tuple((members[i], members[j])
                  for i, j in zip(upper.row[order].tolist(),
                                  upper.col[order].tolist()))

    counts = graph.nodes.loc[members, 'type'].value_counts()
    type_counts = {etype: int(counts.get(str(etype), 0)) for etype in EntityType}
    return Subnetwork(center, tuple(members), edges, type_counts)


def whole_graph(graph: KnowledgeGraph) -> Subnetwork:
    return Subnetwork(None, graph.ids, tuple(graph.edges()), graph.type_counts())


def neighborhood(graph: KnowledgeGraph, centers: Iterable[str]) -> Subnetwork:
    """
    Induced subnetwork on the centers and all of their neighbors, including
    the edges among the neighbors themselves
    """
    centers = sorted(set(centers))
    graph.check_ids(centers)
    members = set(centers)
    for center in centers:
        members.update(graph.neighbors(center))
    return induced_subgraph(graph, members,
                            center=centers[0] if len(centers) == 1 else None)


def ego_subnetwork(graph: KnowledgeGraph, center: str) -> Subnetwork:
    """
    A node, all nodes connected to it, and their interconnections.

    :raises UnknownEntity: if the center is not in the graph
    """
    return neighborhood(graph, [center])


def paths_between(graph: KnowledgeGraph, source: str, target: str,
                  constraint: PathConstraint = PathConstraint()) -> list[NodePath]:
    """
    Every simple path from `source` to `target` in the collapsed view with
    at most `constraint.max_hops` edges whose intermediate nodes all have an
    allowed type.

    Paths are ordered by length, then by their sequence of ids.

    :raises SameEndpoints: if source and target are the same node
    :raises UnknownEntity: if either endpoint is not in the graph
    """
    if source == target:
        raise SameEndpoints(f"Path endpoints are both {source!r}")
    graph.check_ids([source, target])

    start = graph.index_of(source)
    goal = graph.index_of(target)
    types = graph.nodes['type'].to_numpy()
    allowed = {str(etype) for etype in constraint.allowed_intermediate_types}
    max_hops = constraint.max_hops

    found: list[tuple[int, ...]] = []
    path = [start]
    on_path = {start}

    def extend(node: int) -> None:
        for step in graph.neighbor_indices(node).tolist():
            if step == goal:
                found.append(tuple(path) + (goal,))
                continue
            # an intermediate node needs at least one more hop to the goal
            if len(path) >= max_hops or step in on_path:
                continue
            if allowed and types[step] not in allowed:
                continue
            path.append(step)
            on_path.add(step)
            extend(step)
            on_path.remove(step)
            path.pop()

    extend(start)
    found.sort(key=lambda p: (len(p), p))
    ids = graph.ids
    return [tuple(ids[i] for i in p) for p in found]


def path_members(graph: KnowledgeGraph, paths: Iterable[Sequence[str]],
                 etype: EntityType) -> list[str]:
    """Distinct intermediate nodes of type `etype` found on the paths"""
    members = {node for path in paths for node in path[1:-1]
               if graph.entity(node).etype is etype}
    return sorted(members)


def treatments_for(graph: KnowledgeGraph, disease_ids: Iterable[str],
                   rtype: str = TREATS) -> tuple[list[TreatmentHit], list[str]]:
    """
    Drugs related to any of the given diseases by relations of type `rtype`,
    whichever way round the relation was stored.

    Hits are merged per (drug, disease) pair with their evidence unioned and
    sorted by drug then disease id. Disease ids missing from the graph do not
    stop the query and are returned alongside the hits.

    :param graph: A frozen graph
    :param disease_ids: Non-empty set of disease ids to query
    :param rtype: Relation type to match
    :return: The hits and the sorted unknown disease ids
    """
    diseases = set(disease_ids)
    if not diseases:
        raise ValueError("No disease ids given")
    rtype = rtype.upper()
    unknown = sorted(d for d in diseases if d not in graph)
    if unknown:
        logger.warning(f"Disease ids not in graph: {', '.join(unknown)}")

    evidence: dict[tuple[str, str], set[str]] = {}
    orientations: dict[tuple[str, str], set[str]] = {}
    for relation in graph.relations():
        if relation.rtype != rtype:
            continue
        for drug, disease, orientation in (
                (relation.src, relation.dst, 'forward'),
                (relation.dst, relation.src, 'reverse')):
            if disease in diseases and graph.entity(drug).etype is EntityType.DRUG:
                evidence.setdefault((drug, disease), set()).update(relation.evidence)
                orientations.setdefault((drug, disease), set()).add(orientation)

    hits = []
    for pair in sorted(evidence):
        seen = orientations[pair]
        hits.append(TreatmentHit(pair[0], pair[1], rtype,
                                 frozenset(evidence[pair]),
                                 seen.pop() if len(seen) == 1 else 'both'))
    return hits, unknown


def drug_disease_network(graph: KnowledgeGraph, drug_ids: Iterable[str],
                         drop_same_type_edges: bool = False) -> Subnetwork:
    """
    The drugs plus every disease related to any of them, with the edges
    between those nodes. With `drop_same_type_edges` only edges joining two
    different entity types are kept, which removes drug-drug and
    disease-disease edges.
    """
    drugs = sorted(set(drug_ids))
    graph.check_ids(drugs)
    members = set(drugs)
    for drug in drugs:
        members.update(n for n in graph.neighbors(drug)
                       if graph.entity(n).etype is EntityType.DISEASE)
    network = induced_subgraph(graph, members)
    if not drop_same_type_edges:
        return network

    edges = tuple((u, v) for u, v in network.edges
                  if graph.entity(u).etype is not graph.entity(v).etype)
    return Subnetwork(None, network.nodes, edges, network.type_counts)
