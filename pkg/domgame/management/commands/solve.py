from domgame.choices import Player
from domgame.exact_solver import GameSolver, check_sandwich

from ._base import DomGameCommand


class Command(DomGameCommand):
    help = 'Solve the domination game exactly and print the game domination number.'

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument('--staller-start', action='store_true', help="print gamma_g' (Staller moves first)")
        parser.add_argument('--sandwich', action='store_true',
                            help="also compute gamma and check gamma <= gamma_g <= 2 gamma - 1")
        parser.add_argument('--cap', type=int, help='largest order solved exactly')
        parser.add_argument('--memo-budget', type=int, help='largest memo table, in entries')

    def handle(self, *args, **options):
        graph = self.load_graph(options['file'])
        if options['sandwich']:
            report = check_sandwich(graph, cap=options['cap'])
            self.stdout.write(f"gamma = {report.gamma}")
            self.stdout.write(f"gamma_g = {report.gamma_g}")
            self.stdout.write(f"gamma_g' = {report.gamma_g_prime}")
            if not report.holds:
                self.fail("gamma <= gamma_g <= 2 gamma - 1 does not hold")
            self.stdout.write('sandwich holds')
            return
        solver = GameSolver(graph, cap=options['cap'], memo_budget=options['memo_budget'])
        if options['staller_start']:
            self.stdout.write(f"gamma_g' = {solver.game_value(Player.STALLER)}")
        else:
            self.stdout.write(f"gamma_g = {solver.game_value(Player.DOMINATOR)}")
