from domgame.choices import BoundFamily, Family, Player
from domgame.potential_engine import FamilySpec
from domgame.strategy_lab import worst_case_length_vs_greedy
from domgame.verify_harness import bound_value

from ._base import DomGameCommand
from .play import FAMILIES


def family_bound(family: FamilySpec, n: int, first: Player):
    staller_start = first == Player.STALLER
    if family.family == Family.DEG3:
        return bound_value(BoundFamily.DEG3_STALLER_START if staller_start else BoundFamily.DEG3, n)
    if family.family == Family.MIN_DEG:
        kind = BoundFamily.MIN_DEG_STALLER_START if staller_start else BoundFamily.MIN_DEG
        return bound_value(kind, n, family.d)
    return bound_value(BoundFamily.GENERAL_23, n)


class Command(DomGameCommand):
    help = 'Longest game the greedy Dominator can be forced into, over every Staller line.'

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument('--family', choices=FAMILIES, default='auto')
        parser.add_argument('--d', type=int, help='degree parameter of the mindeg family (default: minimum degree)')
        parser.add_argument('--staller-start', action='store_true')
        parser.add_argument('--budget', type=int, help='node budget of the search')

    def handle(self, *args, **options):
        graph = self.load_graph(options['file'])
        family = FamilySpec.resolve(options['family'], graph, options['d'])
        first = Player.STALLER if options['staller_start'] else Player.DOMINATOR
        length = worst_case_length_vs_greedy(graph, family, first, budget=options['budget'])
        bound = family_bound(family, graph.n, first)
        self.stdout.write(f"worst case = {length}")
        self.stdout.write(f"bound {bound.label} = {bound.value} (floor {bound.floor})")
        if not bound.admits(length):
            self.fail(f"worst case {length} exceeds {bound.label} floor {bound.floor}")
