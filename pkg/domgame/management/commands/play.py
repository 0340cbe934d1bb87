from pathlib import Path

from domgame.choices import Player, PolicyKind
from domgame.potential_engine import FamilySpec
from domgame.strategy_lab import Policy, play_game

from ._base import DomGameCommand

FAMILIES = ['auto', 'two-thirds', 'deg3', 'mindeg']
STALLERS = [PolicyKind.RANDOM_STALLER, PolicyKind.MIN_GAIN_STALLER,
            PolicyKind.WORST_CASE_STALLER, PolicyKind.EXACT_OPTIMAL]
DOMINATORS = [PolicyKind.GREEDY_DOMINATOR, PolicyKind.EXACT_OPTIMAL]


class Command(DomGameCommand):
    help = 'Play one game of the greedy Dominator against a Staller policy and audit the trace.'

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument('--family', choices=FAMILIES, default='auto')
        parser.add_argument('--d', type=int, help='degree parameter of the mindeg family (default: minimum degree)')
        parser.add_argument('--staller', choices=[kind.value for kind in STALLERS], default=PolicyKind.RANDOM_STALLER.value)
        parser.add_argument('--dominator', choices=[kind.value for kind in DOMINATORS],
                            default=PolicyKind.GREEDY_DOMINATOR.value)
        parser.add_argument('--staller-start', action='store_true')
        parser.add_argument('--seed', type=int, help='seed of the random Staller')
        parser.add_argument('--json', dest='json_out', help='write the trace as JSON to this file')

    def handle(self, *args, **options):
        path = Path(options['file'])
        graph = self.load_graph(path)
        family = FamilySpec.resolve(options['family'], graph, options['d'])
        first = Player.STALLER if options['staller_start'] else Player.DOMINATOR
        trace = play_game(
            graph, family,
            Policy(PolicyKind(options['dominator'])),
            Policy(PolicyKind(options['staller']), options['seed']),
            first,
            graph_id=path.stem,
            seed=options['seed'],
        )
        if options['json_out']:
            self.write_json(options['json_out'], trace.to_json())
        for record in trace.turns:
            self.stdout.write(
                f"{record.i:3d} {record.player.value} v={record.vertex:<3d} "
                f"phase={record.phase} {record.stage:<5s} gain={record.gain} p={record.potential_after}")
        self.stdout.write(f"length = {trace.length} ({family.label}, first={first.label})")
        if trace.findings:
            for finding in trace.findings:
                self.stderr.write(f"turn {finding.turn} {finding.check}: {finding.detail}")
            self.fail(f"{len(trace.findings)} audit findings")
