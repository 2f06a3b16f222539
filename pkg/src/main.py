import argparse
import logging
import os
import sys

sys.path.insert(0, os.path.dirname(__file__))
from cli import ego, export, katz, paths, stats, treats
from lib.errors import GraphError, SameEndpoints
from lib.graph import EntityType

logger = logging.getLogger('')
logging.basicConfig(level=logging.INFO,
                    filename="kg-network-analytics.log",
                    format='%(asctime)s - %(levelname)s - %(message)s',
                    filemode='w')

console = logging.StreamHandler()
formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')
console.setFormatter(formatter)

FATAL_ERRORS = (GraphError, OSError, SyntaxError, KeyError, ValueError)


def entity_type(label: str) -> EntityType:
    try:
        return EntityType.from_label(label)
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error))


def entity_types(labels: str) -> list[EntityType]:
    return [entity_type(label) for label in labels.split(',') if label.strip()]


def alpha_scale(value: str) -> float:
    scale = float(value)
    if not 0. < scale < 1.:
        raise argparse.ArgumentTypeError(f"alpha scale must lie in (0, 1), got {value}")
    return scale


def positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Network analyses of typed biomedical knowledge graphs")
    parser.add_argument("-d", "--debug",
                        action='store_true',
                        help='Show progress and ingest details on the console')
    parser.add_argument("-c", "--config",
                        type=str,
                        default=None,
                        help='config file overriding the default settings')
    subparsers = parser.add_subparsers(dest='command', required=True,
                                       help="Analyses to run")

    graph_files = argparse.ArgumentParser(add_help=False)
    graph_files.add_argument('--entities',
                             type=str,
                             required=True,
                             help='entities file in tsv format')
    graph_files.add_argument('--relations',
                             type=str,
                             required=True,
                             help='relations file in tsv format')

    stats_parser = subparsers.add_parser('stats', parents=[graph_files],
                                         help="Graph size, type counts and ingest summary")
    stats_parser.set_defaults(func=stats.main)

    katz_parser = subparsers.add_parser('katz', parents=[graph_files],
                                        help="Rank entities by Katz centrality")
    katz_parser.add_argument('--alpha-scale',
                             type=alpha_scale,
                             default=None,
                             help='attenuation as a fraction of 1/lambda_max (default 0.85)')
    katz_parser.add_argument('--top',
                             type=positive_int,
                             default=None,
                             help='number of rows to print (default 20)')
    katz_parser.add_argument('--type',
                             dest='etype',
                             type=entity_type,
                             default=None,
                             help='only rank entities of this type')
    katz_parser.add_argument('--no-normalize',
                             action='store_true',
                             help='print raw rather than unit L2 norm scores')
    katz_parser.add_argument('--format',
                             dest='fmt',
                             choices=['tsv', 'markdown'],
                             default='tsv',
                             help='table format')
    katz_parser.set_defaults(func=katz.main)

    ego_parser = subparsers.add_parser('ego', parents=[graph_files],
                                       help="Subnetwork of a node and its neighbors")
    ego_parser.add_argument('--node',
                            dest='nodes',
                            action='append',
                            required=True,
                            help='center node id, repeat for a joint neighborhood')
    ego_parser.add_argument('--format',
                            dest='fmt',
                            choices=['dot', 'graphml', 'stats', 'rank'],
                            default='stats',
                            help='output format')
    ego_parser.add_argument('--top',
                            type=positive_int,
                            default=None,
                            help='rows to print with --format rank')
    ego_parser.add_argument('--type',
                            dest='etype',
                            type=entity_type,
                            default=None,
                            help='only rank entities of this type with --format rank')
    ego_parser.set_defaults(func=ego.main)

    paths_parser = subparsers.add_parser('paths', parents=[graph_files],
                                         help="Simple paths between two nodes")
    paths_parser.add_argument('--from',
                              dest='source',
                              required=True,
                              help='start node id')
    paths_parser.add_argument('--to',
                              dest='target',
                              required=True,
                              help='end node id')
    paths_parser.add_argument('--max-hops',
                              type=positive_int,
                              default=3,
                              help='maximum number of edges per path')
    paths_parser.add_argument('--intermediate-types',
                              type=entity_types,
                              default=[],
                              help='comma separated types allowed between the endpoints')
    paths_parser.add_argument('--list-type',
                              type=entity_type,
                              default=None,
                              help='print the distinct entities of this type on the paths')
    paths_parser.set_defaults(func=paths.main)

    treats_parser = subparsers.add_parser('treats', parents=[graph_files],
                                          help="Drugs related to diseases by TREATS")
    diseases = treats_parser.add_mutually_exclusive_group(required=True)
    diseases.add_argument('--diseases-file',
                          type=str,
                          help='file of disease ids, one per line')
    diseases.add_argument('--diseases',
                          type=str,
                          help='comma separated disease ids')
    treats_parser.add_argument('--rtype',
                               type=str,
                               default='TREATS',
                               help='relation type to match')
    treats_parser.add_argument('--format',
                               dest='fmt',
                               choices=['tsv', 'markdown'],
                               default='tsv',
                               help='table format')
    treats_parser.add_argument('--network-out',
                               type=str,
                               default=None,
                               help='write the drug-disease network of the hits here')
    treats_parser.add_argument('--network-format',
                               choices=['dot', 'graphml'],
                               default='dot',
                               help='format of the drug-disease network')
    treats_parser.add_argument('--no-same-type-edges',
                               action='store_true',
                               help='drop drug-drug and disease-disease edges from the network')
    treats_parser.set_defaults(func=treats.main)

    export_parser = subparsers.add_parser('export', parents=[graph_files],
                                          help="Write the whole graph")
    export_parser.add_argument('--format',
                               dest='fmt',
                               choices=['dot', 'graphml', 'tsv'],
                               default='dot',
                               help='output format')
    export_parser.add_argument('--out',
                               type=str,
                               default=None,
                               help='output file, standard output if omitted')
    export_parser.set_defaults(func=export.main)

    return parser


def main(argv: list[str] | None = None) -> None:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == 'export' and args.fmt == 'tsv' and args.out is None:
        parser.error("--format tsv needs --out")
    if (args.command == 'treats' and args.diseases is not None
            and not treats.read_disease_ids(None, args.diseases)):
        parser.error("--diseases names no disease ids")

    if args.debug:
        console.setLevel(logging.INFO)
    else:
        console.setLevel(logging.WARNING)
    if console not in logger.handlers:
        logger.addHandler(console)

    try:
        args.func(**vars(args))
    except SameEndpoints as error:
        logger.error(str(error))
        sys.exit(2)
    except FATAL_ERRORS as error:
        logger.error(str(error))
        sys.exit(1)


if __name__ == "__main__":
    main()
