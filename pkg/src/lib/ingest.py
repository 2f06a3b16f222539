import logging
import networkx as nx
import numpy as np
import pandas as pd

from collections.abc import Iterable
from dataclasses import dataclass, field
from lib.errors import DuplicateConflict, MalformedHeader, UnknownEntity
from lib.graph import (Entity, EntityType, KnowledgeGraph, Relation,
                       RTYPE_PATTERN)
from pathlib import Path

logger = logging.getLogger('')

ENTITY_HEADER = ['id', 'name', 'type']
RELATION_HEADER = ['src_id', 'dst_id', 'rel_type', 'doc_id']
EVIDENCE_SEPARATOR = ';'

ENTITIES = 'entities'
RELATIONS = 'relations'


@dataclass(frozen=True)
class Rejection:
    source: str
    line: int
    reason: str


@dataclass
class IngestReport:
    """
    Counts and rejections collected while reading entity and relation files.
    Loaded counts are accepted rows, so for each file
    `loaded + rejected == rows read`; an accepted row that merged into an
    earlier one also counts towards `duplicates_merged`.
    """
    entity_rows_read: int = 0
    relation_rows_read: int = 0
    entities_loaded: int = 0
    relations_loaded: int = 0
    duplicates_merged: int = 0
    rejection_log: list[Rejection] = field(default_factory=list)

    @property
    def rows_rejected(self) -> int:
        return len(self.rejection_log)

    def rejected(self, source: str) -> int:
        return sum(1 for r in self.rejection_log if r.source == source)

    def reject(self, source: str, line: int, reason: str) -> None:
        logger.info(f"Rejected {source} line {line}: {reason}")
        self.rejection_log.append(Rejection(source, line, reason))

    def sort_log(self) -> None:
        order = {ENTITIES: 0, RELATIONS: 1}
        self.rejection_log.sort(key=lambda r: (order.get(r.source, 2), r.line))

    def combine(self, other: 'IngestReport') -> 'IngestReport':
        combined = IngestReport(
            self.entity_rows_read + other.entity_rows_read,
            self.relation_rows_read + other.relation_rows_read,
            self.entities_loaded + other.entities_loaded,
            self.relations_loaded + other.relations_loaded,
            self.duplicates_merged + other.duplicates_merged,
            self.rejection_log + other.rejection_log)
        combined.sort_log()
        return combined


def split_rows(lines: Iterable[str], header: list[str],
               source: str) -> tuple[pd.DataFrame, IngestReport]:
    """
    Split tab separated lines into a dataframe of string columns.

    The first line must match `header` exactly. Blank lines are skipped,
    rows with the wrong number of columns are rejected. The returned frame
    is indexed by 1-based line number.

    :param lines: Lines of the file, with or without line endings
    :param header: Expected column names
    :param source: Label used in the rejection log
    :return: The frame of well formed rows and a report of rows read and
             rejected
    :raises MalformedHeader: if the header line is missing or wrong
    """
    raw = pd.Series(list(lines), dtype=object).str.rstrip('\r\n')
    if raw.empty or raw.iloc[0].split('\t') != header:
        found = None if raw.empty else raw.iloc[0]
        raise MalformedHeader(f"{source} file header should be "
                              f"{'<tab>'.join(header)!r}, found {found!r}")

    body = raw.iloc[1:]
    body.index = body.index + 1
    body = body[body != '']

    report = IngestReport()
    if source == ENTITIES:
        report.entity_rows_read = len(body)
    else:
        report.relation_rows_read = len(body)

    fields = body.str.split('\t')
    arity = fields.str.len()
    for line, count in arity[arity != len(header)].items():
        report.reject(source, int(line),
                      f"expected {len(header)} columns, found {count}")

    good = fields[arity == len(header)]
    frame = pd.DataFrame(good.tolist(), columns=header, index=good.index)
    frame.index.name = 'line'
    return frame, report


def reject_rows(frame: pd.DataFrame, reasons: pd.Series,
                report: IngestReport, source: str) -> pd.DataFrame:
    """
    Log every row with a non-empty reason and return the remaining rows
    """
    for line, reason in reasons[reasons != ''].items():
        report.reject(source, int(line), reason)
    return frame[reasons == '']


def read_entity_rows(lines: Iterable[str]
                     ) -> tuple[list[tuple[int, Entity]], IngestReport]:
    frame, report = split_rows(lines, ENTITY_HEADER, ENTITIES)

    types = frame['type'].str.strip().str.lower()
    known_types = types.isin([str(etype) for etype in EntityType])
    reasons = pd.Series(
        np.select([frame['id'] == '', frame['id'].str.contains('\r'),
                   ~known_types],
                  ['empty id', 'id contains a carriage return',
                   "unknown type " + frame['type'].map(repr)],
                  default=''),
        index=frame.index, dtype=object)
    frame = reject_rows(frame.assign(type=types), reasons, report, ENTITIES)

    rows = [(int(line), Entity(row.id, row.name, EntityType(row.type)))
            for line, row in zip(frame.index, frame.itertuples(index=False))]
    report.entities_loaded = len(rows)
    return rows, report


def read_relation_rows(lines: Iterable[str]
                       ) -> tuple[list[tuple[int, Relation]], IngestReport]:
    frame, report = split_rows(lines, RELATION_HEADER, RELATIONS)

    rtypes = frame['rel_type'].str.strip().str.upper()
    valid_rtypes = rtypes.map(lambda r: RTYPE_PATTERN.fullmatch(r) is not None)
    reasons = pd.Series(
        np.select([(frame['src_id'] == '') | (frame['dst_id'] == ''),
                   ~valid_rtypes.astype(bool),
                   frame['src_id'] == frame['dst_id']],
                  ['empty endpoint',
                   "invalid relation type " + frame['rel_type'].map(repr),
                   'self-loop'],
                  default=''),
        index=frame.index, dtype=object)
    frame = reject_rows(frame.assign(rel_type=rtypes), reasons, report,
                        RELATIONS)

    evidence = frame['doc_id'].map(
        lambda docs: frozenset(d.strip() for d in docs.split(EVIDENCE_SEPARATOR)
                               if d.strip()))
    rows = [(int(line), Relation(src, dst, rtype, docs))
            for line, src, dst, rtype, docs in zip(
                frame.index, frame['src_id'], frame['dst_id'],
                frame['rel_type'], evidence)]
    report.relations_loaded = len(rows)
    return rows, report


def parse_entities(lines: Iterable[str]) -> tuple[list[Entity], IngestReport]:
    """
    Parse an entities file with header `id<tab>name<tab>type`. The type
    column is matched case-insensitively against the four entity types.

    :param lines: Lines of the entities file
    :return: One Entity per valid row, and the ingest report
    :raises MalformedHeader: if the header line is wrong
    """
    rows, report = read_entity_rows(lines)
    return [entity for _, entity in rows], report


def parse_relations(lines: Iterable[str]
                    ) -> tuple[list[Relation], IngestReport]:
    """
    Parse a relations file with header
    `src_id<tab>dst_id<tab>rel_type<tab>doc_id`. Relation types are
    uppercased, `doc_id` may be empty or hold several `;` separated ids.

    :param lines: Lines of the relations file
    :return: One Relation per valid row, and the ingest report
    :raises MalformedHeader: if the header line is wrong
    """
    rows, report = read_relation_rows(lines)
    return [relation for _, relation in rows], report


def build_graph(entity_rows: list[tuple[int, Entity]],
                relation_rows: list[tuple[int, Relation]],
                report: IngestReport) -> KnowledgeGraph:
    """
    Add parsed rows to a new graph and freeze it. Rows the graph refuses
    (conflicting entity redefinitions, relations to unknown entities) are
    rejected in `report`, and the loaded counts are recounted.
    """
    graph = KnowledgeGraph()
    report.entities_loaded = 0
    report.relations_loaded = 0

    for line, entity in entity_rows:
        try:
            if not graph.add_entity(entity):
                report.duplicates_merged += 1
            report.entities_loaded += 1
        except DuplicateConflict as error:
            report.reject(ENTITIES, line, str(error))

    for line, relation in relation_rows:
        try:
            if not graph.add_relation(relation):
                report.duplicates_merged += 1
            report.relations_loaded += 1
        except UnknownEntity as error:
            report.reject(RELATIONS, line, str(error))

    report.sort_log()
    return graph.freeze()


def load_graph(entities_file: str | Path, relations_file: str | Path
               ) -> tuple[KnowledgeGraph, IngestReport]:
    """
    Read, validate and deduplicate an entities file and a relations file
    into a frozen graph. Bad rows are logged and skipped, never fatal.

    :param entities_file: Path to the entities TSV file
    :param relations_file: Path to the relations TSV file
    :return: The frozen graph and the combined ingest report
    :raises OSError: if either file cannot be read
    :raises MalformedHeader: if either header is wrong
    """
    with open(entities_file, encoding='utf-8-sig', newline='\n') as data:
        entity_rows, entity_report = read_entity_rows(data)
    with open(relations_file, encoding='utf-8-sig', newline='\n') as data:
        relation_rows, relation_report = read_relation_rows(data)

    report = entity_report.combine(relation_report)
    graph = build_graph(entity_rows, relation_rows, report)

    if report.rows_rejected:
        logger.warning(f"Rejected {report.rejected(ENTITIES)} entity rows and "
                       f"{report.rejected(RELATIONS)} relation rows, see log")
    logger.info(f"Loaded {report.entities_loaded} entity rows and "
                f"{report.relations_loaded} relation rows, "
                f"{report.duplicates_merged} duplicates merged")
    return graph, report


def tsv_lines(frame: pd.DataFrame) -> str:
    lines = [('\t'.join(frame.columns))]
    if not frame.empty:
        lines += frame.astype(str).agg('\t'.join, axis=1).tolist()
    return '\n'.join(lines) + '\n'


def write_tsv(graph: KnowledgeGraph, entities_file: str | Path,
              relations_file: str | Path) -> None:
    """
    Write a graph back out in the entities/relations TSV format read by
    `load_graph`, with rows in sorted order
    """
    nodes = graph.nodes.reset_index()
    entities = pd.DataFrame({'id': nodes['id'], 'name': nodes['name'],
                             'type': nodes['type']},
                            columns=ENTITY_HEADER)

    relations = graph.relations()
    frame = pd.DataFrame(
        {'src_id': [r.src for r in relations],
         'dst_id': [r.dst for r in relations],
         'rel_type': [r.rtype for r in relations],
         'doc_id': [EVIDENCE_SEPARATOR.join(sorted(r.evidence))
                    for r in relations]},
        columns=RELATION_HEADER)

    Path(entities_file).write_text(tsv_lines(entities), encoding='utf-8')
    Path(relations_file).write_text(tsv_lines(frame), encoding='utf-8')


def load_graphml(text: str) -> KnowledgeGraph:
    """
    Rebuild a graph from a GraphML document written by `report.to_graphml`.
    Each relation type listed on an edge becomes one relation oriented from
    the smaller id, without evidence.

    :param text: The GraphML document
    :return: The frozen graph
    """
    document = nx.parse_graphml(text)
    graph = KnowledgeGraph()
    for node_id, data in document.nodes(data=True):
        graph.add_entity(Entity(str(node_id), data.get('name', ''),
                                EntityType.from_label(data['type'])))
    for u, v, data in document.edges(data=True):
        src, dst = sorted((str(u), str(v)))
        for rtype in data.get('rtypes', '').split(EVIDENCE_SEPARATOR):
            if rtype:
                graph.add_relation(Relation(src, dst, rtype))
    return graph.freeze()
